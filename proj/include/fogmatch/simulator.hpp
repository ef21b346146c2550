#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fogmatch/config.hpp"
#include "fogmatch/msda.hpp"
#include "fogmatch/types.hpp"

namespace fogmatch {

class IoError : public Error {
 public:
  using Error::Error;
};

// Seeded scenario: uniform positions over the square area, per-user task
// count in [tasks_min, tasks_max] with omega_u the sum of the task sizes,
// distinct evenly spaced fog capacities in a seeded order, and quotas per the
// configured policy. Fully determined by (cfg, user_count, seed).
Scenario generate_scenario(const ExperimentConfig& cfg, std::size_t user_count, std::uint64_t seed);

struct ScenarioResult {
  Policy policy = Policy::Msda;
  std::uint64_t seed = 0;
  std::size_t user_count = 0;
  double mean_delay = 0.0;    // s, over matched users
  double median_delay = 0.0;  // s
  double p95_delay = 0.0;     // s, linear interpolation between order statistics
  std::vector<double> fog_load;  // s
  std::vector<std::size_t> fog_occupancy;
  double delta_p = 0.0;  // s
  std::size_t unmatched = 0;
  std::size_t violations = 0;  // fogs outside [q_min, q_max]
  double runtime_ms = 0.0;     // wall clock of the assignment step
  std::optional<std::string> error;
  bool infeasible = false;  // the error came from an empty quota window
  std::vector<StageTrace> stages;  // msda only, when requested
};

struct RunOptions {
  bool keep_stage_traces = false;
};

// Runs every (policy, user_count, seed) in cfg. Runs execute in parallel;
// results come back sorted by policy name, then user_count, then seed. A run
// that fails records its error in the row and the sweep continues.
std::vector<ScenarioResult> run_experiment(const ExperimentConfig& cfg, const RunOptions& options = {});

// One (policy, scenario) evaluation.
ScenarioResult evaluate_policy(const ExperimentConfig& cfg, const Scenario& scenario, Policy policy,
                               std::uint64_t seed, const RunOptions& options = {});

struct CsvOptions {
  // Wall-clock time breaks byte-for-byte reproducibility, so runtime_ms is
  // written as 0 unless asked for.
  bool include_runtime = false;
};

// Header: policy,seed,user_count,mean_delay_s,median_delay_s,p95_delay_s,
// delta_p_s,unmatched,violations,runtime_ms, then fog_load_<i>_s for every
// fog, then fog_occupancy_<i> for every fog. Reals use 6 decimals.
void write_csv(std::ostream& out, const std::vector<ScenarioResult>& results, const CsvOptions& options = {});
void export_csv(const std::vector<ScenarioResult>& results, const std::filesystem::path& path,
                const CsvOptions& options = {});

// JSON lines, one object per msda run that carries stage traces.
void write_stage_traces(std::ostream& out, const std::vector<ScenarioResult>& results);

}  // namespace fogmatch
