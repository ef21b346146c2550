#include "fogmatch/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace fogmatch {

Policy parse_policy(std::string_view name) {
  if (name == "msda") return Policy::Msda;
  if (name == "da_max_only") return Policy::DaMaxOnly;
  if (name == "random") return Policy::Random;
  if (name == "nearest") return Policy::Nearest;
  throw ConfigError("unknown policy '" + std::string(name) + "'");
}

std::string_view to_string(Policy p) {
  switch (p) {
    case Policy::DaMaxOnly: return "da_max_only";
    case Policy::Msda: return "msda";
    case Policy::Nearest: return "nearest";
    case Policy::Random: return "random";
  }
  return "?";
}

QuotaPolicy parse_quota_policy(std::string_view name) {
  if (name == "sqrt-capacity") return QuotaPolicy::SqrtCapacity;
  if (name == "capacity") return QuotaPolicy::Capacity;
  if (name == "uniform") return QuotaPolicy::Uniform;
  throw ConfigError("unknown quota policy '" + std::string(name) + "'");
}

std::string_view to_string(QuotaPolicy p) {
  switch (p) {
    case QuotaPolicy::SqrtCapacity: return "sqrt-capacity";
    case QuotaPolicy::Capacity: return "capacity";
    case QuotaPolicy::Uniform: return "uniform";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(fog_count >= 1, "fog_count must be at least 1");
  require(!user_counts.empty(), "user_counts must not be empty");
  require(std::all_of(user_counts.begin(), user_counts.end(), [](auto n) { return n >= 1; }),
          "user_counts entries must be at least 1");
  require(tasks_min >= 1 && tasks_min <= tasks_max, "tasks_per_user must be a range with 1 <= min <= max");
  require(task_size_min > 0 && task_size_min <= task_size_max, "task_size_range must satisfy 0 < min <= max");
  require(payload_bits_per_work_unit > 0, "payload_bits_per_work_unit must be > 0");
  require(area_side > 0, "area_side must be > 0");
  require(capacity_min > 0 && capacity_min <= capacity_max, "capacity_range must satisfy 0 < min <= max");
  require(fog_count == 1 || capacity_min < capacity_max, "capacity_range must be wide enough for distinct fogs");
  require(bandwidth > 0, "bandwidth must be > 0");
  require(q_max_slack >= 0, "q_max_slack must be >= 0");
  require(q_min_fraction >= 0, "q_min_fraction must be >= 0");
  require(!seeds.empty(), "seeds must not be empty");
  require(!policies.empty(), "policies must not be empty");
  require(std::set<Policy>(policies.begin(), policies.end()).size() == policies.size(), "policies repeat");
  require(gl_criterion != GlobalCriterion::Custom, "custom-order global lists cannot be generated");
  require(verify_instances >= 1, "verify_instances must be at least 1");
  require(verify_max_users >= 1 && verify_max_users <= 8, "verify_max_users must be in [1, 8]");
  require(verify_max_fogs >= 1 && verify_max_fogs <= 4, "verify_max_fogs must be in [1, 4]");
  try {
    fogmatch::validate(channel);
  } catch (const StructuralError& e) {
    throw ConfigError(e.what());
  }
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = s.find(sep);
    out.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ConfigError(std::string(key) + ": '" + std::string(text) + "' is not a valid number");
  }
  return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view key, std::string_view text) {
  std::vector<T> out;
  for (auto item : split(text, ',')) out.push_back(parse_number<T>(key, item));
  return out;
}

template <typename T>
std::pair<T, T> parse_range(std::string_view key, std::string_view text) {
  auto v = parse_list<T>(key, text);
  if (v.size() != 2) throw ConfigError(std::string(key) + ": expected 'min, max'");
  return {v[0], v[1]};
}

std::vector<std::size_t> parse_user_counts(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) return parse_list<std::size_t>("user_counts", text);
  if (parts.size() != 3) throw ConfigError("user_counts: expected a list or 'first:last:step'");
  const auto first = parse_number<std::size_t>("user_counts", parts[0]);
  const auto last = parse_number<std::size_t>("user_counts", parts[1]);
  const auto step = parse_number<std::size_t>("user_counts", parts[2]);
  if (step == 0 || first > last) throw ConfigError("user_counts: need first <= last and step > 0");
  std::vector<std::size_t> out;
  for (auto n = first; n <= last; n += step) out.push_back(n);
  return out;
}

template <typename Fn>
auto rethrow_as_config(std::string_view key, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  using Setter = std::function<void(std::string_view key, std::string_view value)>;
  const std::map<std::string, Setter, std::less<>> setters{
      {"fog_count", [&](auto k, auto v) { cfg.fog_count = parse_number<std::size_t>(k, v); }},
      {"user_counts", [&](auto, auto v) { cfg.user_counts = parse_user_counts(v); }},
      {"tasks_per_user", [&](auto k, auto v) { std::tie(cfg.tasks_min, cfg.tasks_max) = parse_range<std::size_t>(k, v); }},
      {"task_size_range", [&](auto k, auto v) { std::tie(cfg.task_size_min, cfg.task_size_max) = parse_range<double>(k, v); }},
      {"payload_bits_per_work_unit", [&](auto k, auto v) { cfg.payload_bits_per_work_unit = parse_number<double>(k, v); }},
      {"area_side", [&](auto k, auto v) { cfg.area_side = parse_number<double>(k, v); }},
      {"capacity_range", [&](auto k, auto v) { std::tie(cfg.capacity_min, cfg.capacity_max) = parse_range<double>(k, v); }},
      {"bandwidth", [&](auto k, auto v) { cfg.bandwidth = parse_number<double>(k, v); }},
      {"tx_power", [&](auto k, auto v) { cfg.channel.tx_power = parse_number<double>(k, v); }},
      {"noise_power", [&](auto k, auto v) { cfg.channel.noise_power = parse_number<double>(k, v); }},
      {"path_loss_exponent", [&](auto k, auto v) { cfg.channel.path_loss_exponent = parse_number<double>(k, v); }},
      {"reference_distance", [&](auto k, auto v) { cfg.channel.reference_distance = parse_number<double>(k, v); }},
      {"quota_policy", [&](auto, auto v) { cfg.quota_policy = parse_quota_policy(v); }},
      {"q_max_slack", [&](auto k, auto v) { cfg.q_max_slack = parse_number<double>(k, v); }},
      {"q_min_fraction", [&](auto k, auto v) { cfg.q_min_fraction = parse_number<double>(k, v); }},
      {"seeds", [&](auto k, auto v) { cfg.seeds = parse_list<std::uint64_t>(k, v); }},
      {"policies",
       [&](auto, auto v) {
         cfg.policies.clear();
         for (auto name : split(v, ',')) cfg.policies.push_back(parse_policy(name));
       }},
      {"gl_criterion", [&](auto k, auto v) { cfg.gl_criterion = rethrow_as_config(k, [&] { return parse_global_criterion(v); }); }},
      {"user_pref_criterion", [&](auto k, auto v) { cfg.user_pref_criterion = rethrow_as_config(k, [&] { return parse_user_criterion(v); }); }},
      {"threads", [&](auto k, auto v) { cfg.threads = parse_number<std::size_t>(k, v); }},
      {"verify_instances", [&](auto k, auto v) { cfg.verify_instances = parse_number<std::size_t>(k, v); }},
      {"verify_max_users", [&](auto k, auto v) { cfg.verify_max_users = parse_number<std::size_t>(k, v); }},
      {"verify_max_fogs", [&](auto k, auto v) { cfg.verify_max_fogs = parse_number<std::size_t>(k, v); }},
  };

  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    auto line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
    if (!seen.emplace(key).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + std::string(key) + "' set twice");
    }
    it->second(key, value);
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace fogmatch
