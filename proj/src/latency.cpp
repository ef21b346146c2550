#include "fogmatch/latency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace fogmatch {

double transmission_rate(const UserProfile& u, const FogProfile& f, const ChannelModel& ch) {
  const double d = std::max(distance(u.position, f.position), ch.reference_distance);
  const double sinr = ch.tx_power * std::pow(d / ch.reference_distance, -ch.path_loss_exponent) / ch.noise_power;
  return f.bandwidth * std::log2(1.0 + sinr);
}

double propagation_delay(const UserProfile& u, const FogProfile& f, const ChannelModel& ch) {
  const double rate = transmission_rate(u, f, ch);
  if (!(rate > 0.0)) {
    std::ostringstream os;
    os << "link " << u.id << " -> " << f.id << " has zero transmission rate";
    throw LinkError(os.str());
  }
  return u.tx_payload / rate;
}

double queueing_delay(std::span<const double> pending, const FogProfile& f) {
  return std::accumulate(pending.begin(), pending.end(), 0.0) / f.capacity;
}

DelayBreakdown response_delay(const UserProfile& u, const FogProfile& f, std::span<const double> pending,
                              const ChannelModel& ch) {
  DelayBreakdown d;
  d.processing = u.task_size / f.capacity;
  d.queueing = queueing_delay(pending, f);
  d.propagation = propagation_delay(u, f, ch);
  d.total = d.processing + d.queueing + d.propagation;
  return d;
}

namespace {

void check_shape(const Matching& m, const Scenario& scenario, const GlobalList& gl) {
  if (m.user_count() != scenario.user_count() || m.fog_count() != scenario.fog_count() ||
      gl.size() != scenario.user_count()) {
    throw StructuralError("matching, global list and scenario disagree on user or fog count");
  }
}

// Users at f in service order, with their delays.
void serve_fog(const Matching& m, FogId f, const Scenario& scenario, const GlobalList& gl,
               std::vector<double>& delays) {
  std::vector<UserId> queue(m.users_of(f).begin(), m.users_of(f).end());
  std::sort(queue.begin(), queue.end(), [&](UserId a, UserId b) { return gl.rank(a) < gl.rank(b); });
  const auto& fog = scenario.fog(f);
  std::vector<double> pending;
  pending.reserve(queue.size());
  for (auto u : queue) {
    const auto& user = scenario.user(u);
    delays[u.value] = response_delay(user, fog, pending, scenario.channel()).total;
    pending.push_back(user.task_size);
  }
}

}  // namespace

std::vector<double> user_delays(const Matching& m, const Scenario& scenario, const GlobalList& gl) {
  check_shape(m, scenario, gl);
  std::vector<double> delays(m.user_count(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t f = 0; f < m.fog_count(); ++f) serve_fog(m, FogId{f}, scenario, gl, delays);
  return delays;
}

double fog_load(const Matching& m, FogId f, const Scenario& scenario, const GlobalList& gl) {
  check_shape(m, scenario, gl);
  std::vector<double> delays(m.user_count(), 0.0);
  serve_fog(m, f, scenario, gl, delays);
  double load = 0.0;
  for (auto u : m.users_of(f)) load += delays[u.value];
  return load;
}

std::vector<double> fog_loads(const Matching& m, const Scenario& scenario, const GlobalList& gl) {
  const auto delays = user_delays(m, scenario, gl);
  std::vector<double> loads(m.fog_count(), 0.0);
  for (std::size_t f = 0; f < m.fog_count(); ++f) {
    for (auto u : m.users_of(FogId{f})) loads[f] += delays[u.value];
  }
  return loads;
}

double load_imbalance(std::span<const double> loads) {
  if (loads.empty()) throw StructuralError("load imbalance needs at least one fog");
  auto [lo, hi] = std::minmax_element(loads.begin(), loads.end());
  return *hi - *lo;
}

double load_imbalance(const Matching& m, const Scenario& scenario, const GlobalList& gl) {
  return load_imbalance(fog_loads(m, scenario, gl));
}

double total_delay(const Matching& m, const Scenario& scenario, const GlobalList& gl) {
  const auto loads = fog_loads(m, scenario, gl);
  return std::accumulate(loads.begin(), loads.end(), 0.0);
}

}  // namespace fogmatch
