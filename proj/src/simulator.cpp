#include "fogmatch/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <thread>

#include <json.hpp>

#include "fogmatch/baselines.hpp"
#include "fogmatch/deferred_acceptance.hpp"
#include "fogmatch/latency.hpp"
#include "fogmatch/preferences.hpp"

namespace fogmatch {

namespace {

constexpr int kMaxQuotaDraws = 100;

std::mt19937_64 make_rng(std::uint64_t seed, std::size_t user_count, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(user_count), stream};
  return std::mt19937_64(seq);
}

std::vector<std::size_t> draw_min_quotas(const ExperimentConfig& cfg, std::size_t user_count, std::mt19937_64& rng) {
  const auto upper = static_cast<std::size_t>(
      std::floor(cfg.q_min_fraction * static_cast<double>(user_count) / static_cast<double>(cfg.fog_count)));
  std::uniform_int_distribution<std::size_t> draw(0, upper);
  std::vector<std::size_t> q(cfg.fog_count);
  for (int attempt = 0; attempt < kMaxQuotaDraws; ++attempt) {
    for (auto& v : q) v = draw(rng);
    if (std::accumulate(q.begin(), q.end(), std::size_t{0}) <= user_count) return q;
  }
  throw InfeasibleQuotaError("minimum quotas exceeded the user count in " + std::to_string(kMaxQuotaDraws) +
                             " draws; lower q_min_fraction");
}

std::vector<std::size_t> max_quotas(const ExperimentConfig& cfg, std::size_t user_count,
                                    const std::vector<FogProfile>& fogs) {
  std::vector<double> weight(fogs.size());
  for (std::size_t f = 0; f < fogs.size(); ++f) {
    switch (cfg.quota_policy) {
      case QuotaPolicy::SqrtCapacity: weight[f] = std::sqrt(fogs[f].capacity); break;
      case QuotaPolicy::Capacity: weight[f] = fogs[f].capacity; break;
      case QuotaPolicy::Uniform: weight[f] = 1.0; break;
    }
  }
  const double total = std::accumulate(weight.begin(), weight.end(), 0.0);
  std::vector<std::size_t> q(fogs.size());
  for (std::size_t f = 0; f < fogs.size(); ++f) {
    const double share = (1.0 + cfg.q_max_slack) * static_cast<double>(user_count) * weight[f] / total;
    q[f] = std::max(fogs[f].q_min, static_cast<std::size_t>(std::ceil(share)));
  }
  // Rounding can leave the window one short when the slack is zero.
  const auto heaviest = static_cast<std::size_t>(std::max_element(weight.begin(), weight.end()) - weight.begin());
  while (std::accumulate(q.begin(), q.end(), std::size_t{0}) < user_count) ++q[heaviest];
  return q;
}

double interpolated_quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::uint64_t random_policy_seed(std::uint64_t seed, std::size_t user_count) {
  auto rng = make_rng(seed, user_count, 2);
  return rng();
}

}  // namespace

Scenario generate_scenario(const ExperimentConfig& cfg, std::size_t user_count, std::uint64_t seed) {
  cfg.validate();
  auto rng = make_rng(seed, user_count, 1);
  std::uniform_real_distribution<double> coord(0.0, cfg.area_side);

  std::vector<double> levels(cfg.fog_count);
  for (std::size_t f = 0; f < cfg.fog_count; ++f) {
    levels[f] = cfg.fog_count == 1
                    ? cfg.capacity_min
                    : cfg.capacity_min + (cfg.capacity_max - cfg.capacity_min) * static_cast<double>(f) /
                                             static_cast<double>(cfg.fog_count - 1);
  }
  std::shuffle(levels.begin(), levels.end(), rng);

  std::vector<FogProfile> fogs(cfg.fog_count);
  for (std::size_t f = 0; f < cfg.fog_count; ++f) {
    fogs[f].id = FogId{f};
    fogs[f].position = {coord(rng), coord(rng)};
    fogs[f].capacity = levels[f];
    fogs[f].bandwidth = cfg.bandwidth;
  }

  std::uniform_int_distribution<std::size_t> task_count(cfg.tasks_min, cfg.tasks_max);
  std::uniform_real_distribution<double> task_size(cfg.task_size_min, cfg.task_size_max);
  std::vector<UserProfile> users(user_count);
  for (std::size_t u = 0; u < user_count; ++u) {
    users[u].id = UserId{u};
    users[u].position = {coord(rng), coord(rng)};
    const auto n = task_count(rng);
    double work = 0.0;
    for (std::size_t t = 0; t < n; ++t) work += task_size(rng);
    users[u].task_size = work;
    users[u].tx_payload = work * cfg.payload_bits_per_work_unit;
  }

  const auto q_min = draw_min_quotas(cfg, user_count, rng);
  for (std::size_t f = 0; f < cfg.fog_count; ++f) fogs[f].q_min = q_min[f];
  const auto q_max = max_quotas(cfg, user_count, fogs);
  for (std::size_t f = 0; f < cfg.fog_count; ++f) fogs[f].q_max = q_max[f];

  return Scenario(std::move(users), std::move(fogs), cfg.channel, seed);
}

ScenarioResult evaluate_policy(const ExperimentConfig& cfg, const Scenario& scenario, Policy policy,
                               std::uint64_t seed, const RunOptions& options) {
  ScenarioResult r;
  r.policy = policy;
  r.seed = seed;
  r.user_count = scenario.user_count();

  const auto prefs = build_user_preferences(scenario, cfg.user_pref_criterion);
  const auto gl = build_global_list(scenario, cfg.gl_criterion);
  const auto quotas = QuotaVector::from_fogs(scenario.fogs());

  const auto start = std::chrono::steady_clock::now();
  Matching m;
  switch (policy) {
    case Policy::Msda: {
      auto out = msda(prefs, gl, quotas);
      m = std::move(out.matching);
      if (options.keep_stage_traces) r.stages = std::move(out.stages);
      break;
    }
    case Policy::DaMaxOnly: m = deferred_acceptance(prefs, gl, quotas.maxima()); break;
    case Policy::Random: m = random_assignment(scenario, random_policy_seed(seed, scenario.user_count())); break;
    case Policy::Nearest: m = nearest_assignment(scenario); break;
  }
  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  const auto delays = user_delays(m, scenario, gl);
  std::vector<double> matched;
  matched.reserve(delays.size());
  for (double d : delays) {
    if (!std::isnan(d)) matched.push_back(d);
  }
  std::sort(matched.begin(), matched.end());
  r.mean_delay = matched.empty() ? std::numeric_limits<double>::quiet_NaN()
                                 : std::accumulate(matched.begin(), matched.end(), 0.0) /
                                       static_cast<double>(matched.size());
  r.median_delay = interpolated_quantile(matched, 0.5);
  r.p95_delay = interpolated_quantile(matched, 0.95);

  r.fog_load.assign(m.fog_count(), 0.0);
  for (std::size_t f = 0; f < m.fog_count(); ++f) {
    for (auto u : m.users_of(FogId{f})) r.fog_load[f] += delays[u.value];
  }
  r.fog_occupancy = m.occupancies();
  r.delta_p = load_imbalance(r.fog_load);
  r.unmatched = m.unmatched_count();
  r.violations = quota_violations(m, quotas);
  return r;
}

std::vector<ScenarioResult> run_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
  cfg.validate();
  auto policies = cfg.policies;
  std::sort(policies.begin(), policies.end(),
            [](Policy a, Policy b) { return to_string(a) < to_string(b); });
  auto counts = cfg.user_counts;
  std::sort(counts.begin(), counts.end());
  auto seeds = cfg.seeds;
  std::sort(seeds.begin(), seeds.end());

  struct Job {
    std::size_t user_count;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (auto n : counts) {
    for (auto s : seeds) jobs.push_back({n, s});
  }

  // results[p * jobs.size() + j] keeps the canonical (policy, count, seed) order.
  std::vector<ScenarioResult> results(policies.size() * jobs.size());
  auto work = [&](std::size_t j) {
    const auto& job = jobs[j];
    std::optional<Scenario> scenario;
    std::exception_ptr scenario_error;
    try {
      scenario.emplace(generate_scenario(cfg, job.user_count, job.seed));
    } catch (const Error&) {
      scenario_error = std::current_exception();
    }
    for (std::size_t p = 0; p < policies.size(); ++p) {
      auto& slot = results[p * jobs.size() + j];
      try {
        if (!scenario) std::rethrow_exception(scenario_error);
        slot = evaluate_policy(cfg, *scenario, policies[p], job.seed, options);
      } catch (const Error& e) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        slot = ScenarioResult{};
        slot.policy = policies[p];
        slot.seed = job.seed;
        slot.user_count = job.user_count;
        slot.mean_delay = slot.median_delay = slot.p95_delay = slot.delta_p = nan;
        slot.fog_load.assign(cfg.fog_count, nan);
        slot.fog_occupancy.assign(cfg.fog_count, 0);
        slot.unmatched = job.user_count;
        slot.error = e.what();
        slot.infeasible = dynamic_cast<const InfeasibleQuotaError*>(&e) != nullptr;
      }
    }
  };

  std::size_t threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, jobs.size());
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (auto j = next.fetch_add(1); j < jobs.size(); j = next.fetch_add(1)) work(j);
      });
    }
  }
  return results;
}

namespace {

std::string fixed6(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ScenarioResult>& results, const CsvOptions& options) {
  if (results.empty()) throw IoError("no results to export");
  std::size_t fogs = 0;
  for (const auto& r : results) fogs = std::max({fogs, r.fog_load.size(), r.fog_occupancy.size()});

  out << "policy,seed,user_count,mean_delay_s,median_delay_s,p95_delay_s,delta_p_s,unmatched,violations,runtime_ms";
  for (std::size_t f = 0; f < fogs; ++f) out << ",fog_load_" << f << "_s";
  for (std::size_t f = 0; f < fogs; ++f) out << ",fog_occupancy_" << f;
  out << '\n';

  for (const auto& r : results) {
    out << to_string(r.policy) << ',' << r.seed << ',' << r.user_count << ',' << fixed6(r.mean_delay) << ','
        << fixed6(r.median_delay) << ',' << fixed6(r.p95_delay) << ',' << fixed6(r.delta_p) << ',' << r.unmatched
        << ',' << r.violations << ',' << fixed6(options.include_runtime ? r.runtime_ms : 0.0);
    for (std::size_t f = 0; f < fogs; ++f) out << ',' << fixed6(f < r.fog_load.size() ? r.fog_load[f] : 0.0);
    for (std::size_t f = 0; f < fogs; ++f) out << ',' << (f < r.fog_occupancy.size() ? r.fog_occupancy[f] : 0);
    out << '\n';
  }
}

void export_csv(const std::vector<ScenarioResult>& results, const std::filesystem::path& path,
                const CsvOptions& options) {
  if (results.empty()) throw IoError("no results to export");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_csv(out, results, options);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

void write_stage_traces(std::ostream& out, const std::vector<ScenarioResult>& results) {
  auto ids = [](const auto& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& id : v) a.push_back(id.value);
    return a;
  };
  auto quotas = [](const std::vector<Quota>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& q : v) a.push_back({q.min, q.max});
    return a;
  };
  for (const auto& r : results) {
    if (r.stages.empty()) continue;
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& s : r.stages) {
      stages.push_back({{"stage", s.stage},
                        {"reserved", ids(s.reserved)},
                        {"subgroup", ids(s.subgroup)},
                        {"capacity_source", s.used_min_quotas ? "q_min" : "q_max"},
                        {"capacities", s.capacities},
                        {"matched", ids(s.matched)},
                        {"received", s.received},
                        {"quotas_before", quotas(s.quotas_before)},
                        {"quotas_after", quotas(s.quotas_after)}});
    }
    nlohmann::json line{{"policy", to_string(r.policy)},
                        {"seed", r.seed},
                        {"user_count", r.user_count},
                        {"stages", std::move(stages)}};
    out << line.dump() << '\n';
  }
}

}  // namespace fogmatch
