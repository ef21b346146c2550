// fogmatch: run user-to-fog assignment experiments from the command line.
//
//   fogmatch run --config reference.cfg --out results.csv [--trace-stages]
//                [--policy msda --policy random] [--seed 1 --seed 2] [--timing]
//   fogmatch demo-counterexample
//   fogmatch verify --config reference.cfg
//
// Exit codes: 0 success, 1 config error, 2 infeasible quotas, 3 I/O error,
// 4 verification failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fogmatch/audit.hpp"
#include "fogmatch/config.hpp"
#include "fogmatch/deferred_acceptance.hpp"
#include "fogmatch/msda.hpp"
#include "fogmatch/oracle.hpp"
#include "fogmatch/simulator.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kInfeasible = 2,
  kIoError = 3,
  kVerifyFailed = 4,
};

using namespace fogmatch;

template <typename Ids>
std::string join(const Ids& ids) {
  std::string s = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ", ";
    s += 'u' + std::to_string(ids[i].value + 1);
  }
  return s + "}";
}

void print_matching(std::ostream& out, const Matching& m) {
  for (std::size_t f = 0; f < m.fog_count(); ++f) {
    auto users = m.users_of(FogId{f});
    out << "    mu(f" << f + 1 << ") = " << join(std::vector<UserId>(users.begin(), users.end())) << '\n';
  }
}

void print_audit(std::ostream& out, const AuditReport& r) {
  for (const auto& f : r.fogs) {
    out << "    f" << f.fog.value + 1 << ": " << f.occupancy << " users, quota [" << f.quota.min << ", "
        << f.quota.max << "]";
    if (f.below_min()) out << "  BELOW MINIMUM";
    if (f.above_max()) out << "  ABOVE MAXIMUM";
    out << '\n';
  }
  out << "    feasible=" << (r.feasible ? "yes" : "no") << " unmatched=" << r.unmatched
      << " blocking_pairs=" << r.blocking_pairs << (r.green() ? "  [green]" : "  [flagged]") << '\n';
}

int demo_counterexample() {
  // Three users and three fogs, q_min = 1 and q_max = 2 everywhere, the
  // global list u1 > u2 > u3 and every user ranking f1 > f2 > f3.
  const UserPreferences prefs({{FogId{0}, FogId{1}, FogId{2}},
                               {FogId{0}, FogId{1}, FogId{2}},
                               {FogId{0}, FogId{1}, FogId{2}}},
                              3);
  const GlobalList gl({UserId{0}, UserId{1}, UserId{2}});
  const QuotaVector quotas({{1, 2}, {1, 2}, {1, 2}});

  std::cout << "Instance: users u1..u3, fogs f1..f3, q_min = 1, q_max = 2\n"
               "          GL: u1 > u2 > u3; every user prefers f1 > f2 > f3\n\n";

  const auto da = deferred_acceptance(prefs, gl, quotas.maxima());
  std::cout << "Deferred acceptance with maximum quotas:\n";
  print_matching(std::cout, da);
  print_audit(std::cout, audit(da, quotas, prefs, gl));

  const auto result = msda(prefs, gl, quotas);
  std::cout << "\nMulti-stage deferred acceptance:\n";
  for (const auto& s : result.stages) {
    std::cout << "  stage " << s.stage << ": reserved " << join(s.reserved) << ", ran DA on " << join(s.subgroup)
              << " with " << (s.used_min_quotas ? "minimum" : "maximum") << " quotas as capacities, matched "
              << join(s.matched) << '\n';
  }
  print_matching(std::cout, result.matching);
  print_audit(std::cout, audit(result, quotas, prefs, gl));
  return kOk;
}

int run(const std::string& config_path, const std::string& out_path, bool trace_stages, bool timing,
        const std::vector<std::string>& policies, const std::vector<std::uint64_t>& seeds) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(config_path);
    if (!policies.empty()) {
      cfg.policies.clear();
      for (const auto& p : policies) cfg.policies.push_back(parse_policy(p));
    }
    if (!seeds.empty()) cfg.seeds = seeds;
    cfg.validate();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  const auto results = run_experiment(cfg, {.keep_stage_traces = trace_stages});
  bool infeasible = false;
  for (const auto& r : results) {
    if (!r.error) continue;
    std::cerr << to_string(r.policy) << " seed=" << r.seed << " users=" << r.user_count << ": " << *r.error << '\n';
    infeasible = infeasible || r.infeasible;
  }

  try {
    export_csv(results, out_path, {.include_runtime = timing});
    if (trace_stages) {
      const auto trace_path = out_path + ".stages.jsonl";
      std::ofstream trace(trace_path, std::ios::binary | std::ios::trunc);
      if (!trace) throw IoError("cannot open " + trace_path + " for writing");
      write_stage_traces(trace, results);
      if (!trace) throw IoError("failed writing " + trace_path);
    }
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIoError;
  }
  std::cerr << "wrote " << results.size() << " rows to " << out_path << '\n';
  return infeasible ? kInfeasible : kOk;
}

int verify(const std::string& config_path) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  bool ok = true;
  for (auto seed : cfg.seeds) {
    for (const auto& c : oracle::run_verification(cfg.verify_instances, cfg.verify_max_users, cfg.verify_max_fogs,
                                                  seed)) {
      std::cout << (c.passed() ? "PASS" : "FAIL") << "  seed=" << seed << "  " << c.name << " (" << c.instances
                << " instances";
      if (!c.passed()) std::cout << ", " << c.failures << " failures, first: " << c.first_failure;
      std::cout << ")\n";
      ok = ok && c.passed();
    }
  }
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"User-to-fog assignment with minimum and maximum quotas"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  bool trace_stages = false;
  bool timing = false;
  std::vector<std::string> policies;
  std::vector<std::uint64_t> seeds;

  auto* run_cmd = app.add_subcommand("run", "Run a policy sweep and write a CSV table");
  run_cmd->add_option("--config", config_path, "Experiment config file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", out_path, "Output CSV path")->required();
  run_cmd->add_flag("--trace-stages", trace_stages, "Write msda stage traces to <out>.stages.jsonl");
  run_cmd->add_flag("--timing", timing, "Fill runtime_ms with measured wall-clock time");
  run_cmd->add_option("--policy", policies, "Override the config's policies (msda, da_max_only, random, nearest)");
  run_cmd->add_option("--seed", seeds, "Override the config's seeds");

  auto* demo_cmd = app.add_subcommand("demo-counterexample",
                                      "Show deferred acceptance breaking a minimum quota and msda repairing it");

  auto* verify_cmd = app.add_subcommand("verify", "Check the engine against brute force on small instances");
  verify_cmd->add_option("--config", config_path, "Experiment config file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run_cmd) return run(config_path, out_path, trace_stages, timing, policies, seeds);
    if (*demo_cmd) return demo_counterexample();
    if (*verify_cmd) return verify(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InfeasibleQuotaError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIoError;
  }
  return kOk;
}
