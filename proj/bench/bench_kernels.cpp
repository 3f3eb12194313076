#include <benchmark/benchmark.h>

#include "avoidforge/avoidinst.hpp"
#include "avoidforge/extract.hpp"
#include "avoidforge/gf2core.hpp"
#include "avoidforge/kernels.hpp"

using namespace avoidforge;

namespace {

std::vector<std::uint64_t> support(std::size_t N, std::size_t log2) {
  const auto member = random_dense_set(N, std::uint64_t{1} << log2, 1);
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < member.size(); ++x)
    if (member[x]) out.push_back(x);
  return out;
}

std::vector<std::uint64_t> diags(std::size_t N, std::size_t m, std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_key(N, m, i).diag_word());
  return out;
}

template <bool Parallel>
void BM_OutputTable(benchmark::State& state) {
  const auto c = random_circuit(static_cast<std::size_t>(state.range(0)), 16, 200, 7);
  for (auto _ : state) {
    auto t = Parallel ? kernels::output_table(c) : kernels::serial::output_table(c);
    benchmark::DoNotOptimize(t.data());
  }
}

template <bool Parallel>
void BM_ExtractionL1(benchmark::State& state) {
  const auto sup = support(12, 11);
  const auto ds = diags(12, 3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto v = Parallel ? kernels::extraction_l1_sum(12, 3, sup, ds) : kernels::serial::extraction_l1_sum(12, 3, sup, ds);
    benchmark::DoNotOptimize(v);
  }
}

template <bool Parallel>
void BM_ToeplitzKernelCounts(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto v = Parallel ? kernels::toeplitz_kernel_counts(N, 3) : kernels::serial::toeplitz_kernel_counts(N, 3);
    benchmark::DoNotOptimize(v.data());
  }
}

template <bool Parallel>
void BM_ShiftsCover(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  const auto member = random_dense_set(m, ((std::uint64_t{1} << m) + 2) / 3, 3);
  Rng rng(4);
  std::vector<std::uint64_t> shifts;
  for (int i = 0; i < 300; ++i) shifts.push_back(rng.below(std::uint64_t{1} << m));
  for (auto _ : state) {
    bool v = Parallel ? kernels::shifts_cover(m, member, shifts) : kernels::serial::shifts_cover(m, member, shifts);
    benchmark::DoNotOptimize(v);
  }
}

}  // namespace

BENCHMARK(BM_OutputTable<false>)->Arg(14)->Arg(18);
BENCHMARK(BM_OutputTable<true>)->Arg(14)->Arg(18);
BENCHMARK(BM_ExtractionL1<false>)->Arg(1000)->Arg(10000);
BENCHMARK(BM_ExtractionL1<true>)->Arg(1000)->Arg(10000);
BENCHMARK(BM_ToeplitzKernelCounts<false>)->Arg(6)->Arg(8);
BENCHMARK(BM_ToeplitzKernelCounts<true>)->Arg(6)->Arg(8);
BENCHMARK(BM_ShiftsCover<false>)->Arg(10)->Arg(14);
BENCHMARK(BM_ShiftsCover<true>)->Arg(10)->Arg(14);

BENCHMARK_MAIN();
