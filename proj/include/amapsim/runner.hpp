#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "amapsim/metrics.hpp"
#include "amapsim/scenario.hpp"

namespace amapsim {

struct RunResult {
  std::string scenario_id;
  PolicyMode policy = PolicyMode::Amapmt;
  std::uint64_t seed = 0;
  MetricsReport report;
  double wall_seconds = 0.0;
};

// Executes every (policy, seed) combination of one scenario. Traffic draws
// depend only on (seed, source), so for a fixed seed the generated traffic
// is identical across policies and the policy is the only varying factor.
std::vector<RunResult> run_matrix(const Scenario& scenario,
                                  const std::vector<PolicyMode>& policies,
                                  const std::vector<std::uint64_t>& seeds);

// Delimited results: a header row, then one row per (scenario, policy, seed,
// media) with media = the five classes plus an "all" aggregate row.
extern const char* kResultsCsvHeader;
void write_results_csv(std::ostream& out, const std::vector<RunResult>& results);

// Human-readable comparison: per-policy metrics pooled across seeds, one
// block per media class plus the aggregate.
void write_summary(std::ostream& out, const std::vector<RunResult>& results);

}  // namespace amapsim
