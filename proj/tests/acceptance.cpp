#include <chrono>
#include <cstdio>
#include <exception>

#include "avoidforge/config.hpp"
#include "avoidforge/error.hpp"
#include "avoidforge/experiments.hpp"

using namespace avoidforge;

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : AVOIDFORGE_ACCEPTANCE_CONFIG;
  Config cfg;
  try {
    cfg = Config::load(path);
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }
  int failed = 0;
  for (int id = 1; id <= kCriteriaCount; ++id) {
    const auto start = std::chrono::steady_clock::now();
    CriterionOutcome o;
    std::string error;
    try {
      o = run_criterion(id, cfg);
    } catch (const std::exception& e) {
      o.id = id;
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = o.time_limit_s == 0 || secs <= o.time_limit_s;
    const bool pass = error.empty() && o.pass && in_time;
    failed += !pass;
    std::printf("criterion %2d %s  %-32s %8.2fs", id, pass ? "PASS" : "FAIL", o.title.c_str(), secs);
    if (o.time_limit_s > 0) std::printf(" (limit %.0fs)", o.time_limit_s);
    if (!error.empty()) std::printf("  error: %s", error.c_str());
    else std::printf("  %s", o.record.line().c_str());
    std::printf("\n");
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", kCriteriaCount - failed, kCriteriaCount);
  return failed == 0 ? 0 : 1;
}
