#pragma once

#include <string>
#include <vector>

#include "avoidforge/config.hpp"

namespace avoidforge {

inline constexpr int kCriteriaCount = 13;

struct CriterionOutcome {
  int id = 0;
  std::string title;
  bool pass = false;
  double time_limit_s = 0;  // 0 means no limit
  Record record;            // deterministic in the config
};

/// Every criterion section with its sizes and seeds.
Config default_experiment_config();

/// Section `[c<id>]` must be present with every key it needs; unknown keys throw.
CriterionOutcome run_criterion(int id, const Config& cfg);

}  // namespace avoidforge
