#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fogmatch/preferences.hpp"
#include "fogmatch/types.hpp"

namespace fogmatch {

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Policy {
  DaMaxOnly,  // plain deferred acceptance under q_max, q_min ignored
  Msda,
  Nearest,
  Random,
};

Policy parse_policy(std::string_view name);
std::string_view to_string(Policy p);

// How generated fogs get their maximum quota. Minimum quotas are always drawn
// uniformly from [0, floor(q_min_fraction * U / F)].
enum class QuotaPolicy {
  // q_max proportional to sqrt(C_f). With queues that grow with every user
  // ahead, this is the split that evens out per-fog load.
  SqrtCapacity,
  Capacity,  // q_max proportional to C_f
  Uniform,   // q_max = U / F for every fog
};

QuotaPolicy parse_quota_policy(std::string_view name);
std::string_view to_string(QuotaPolicy p);

struct ExperimentConfig {
  std::size_t fog_count = 5;
  std::vector<std::size_t> user_counts{50, 100, 150, 200, 250, 300, 350, 400, 450, 500};
  std::size_t tasks_min = 5;
  std::size_t tasks_max = 15;
  double task_size_min = 1e8;  // work units per task
  double task_size_max = 5e8;
  double payload_bits_per_work_unit = 0.1;
  double area_side = 1000.0;  // m
  double capacity_min = 2e9;  // work units / s
  double capacity_max = 10e9;
  double bandwidth = 20e6;  // Hz
  ChannelModel channel{};
  QuotaPolicy quota_policy = QuotaPolicy::SqrtCapacity;
  double q_max_slack = 0.1;
  double q_min_fraction = 1.0;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<Policy> policies{Policy::Msda, Policy::Random};
  GlobalCriterion gl_criterion = GlobalCriterion::TaskSizeDesc;
  UserCriterion user_pref_criterion = UserCriterion::ExpectedDelay;
  std::size_t threads = 0;  // 0: hardware concurrency
  // Brute-force verification sweep (`verify` subcommand).
  std::size_t verify_instances = 200;
  std::size_t verify_max_users = 6;
  std::size_t verify_max_fogs = 3;

  // Throws ConfigError on any broken invariant.
  void validate() const;
};

// Flat `key = value` text. `#` starts a comment, lists are comma separated and
// `user_counts` also accepts `first:last:step`. Unknown or repeated keys are
// errors. Keys not present keep their defaults.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace fogmatch
