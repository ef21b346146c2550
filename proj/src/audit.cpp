#include "fogmatch/audit.hpp"

#include <algorithm>
#include <sstream>

namespace fogmatch {

namespace {

void check_shape(const Matching& m, const UserPreferences& prefs, const GlobalList& gl, std::size_t fog_count) {
  if (m.user_count() != prefs.user_count() || m.user_count() != gl.size() || m.fog_count() != prefs.fog_count() ||
      m.fog_count() != fog_count) {
    throw StructuralError("blocking pairs: matching, preferences, global list and quotas disagree on shape");
  }
}

// Worst GL rank seated at each fog among `users`, and their count.
struct Seats {
  std::vector<std::size_t> count;
  std::vector<std::size_t> worst_rank;
  std::vector<bool> any;
};

Seats seats_of(const Matching& m, std::span<const UserId> users, const GlobalList& gl) {
  Seats s{std::vector<std::size_t>(m.fog_count(), 0), std::vector<std::size_t>(m.fog_count(), 0),
          std::vector<bool>(m.fog_count(), false)};
  for (auto u : users) {
    if (auto f = m.fog_of(u)) {
      const auto i = f->value;
      ++s.count[i];
      if (!s.any[i] || gl.rank(u) > s.worst_rank[i]) s.worst_rank[i] = gl.rank(u);
      s.any[i] = true;
    }
  }
  return s;
}

}  // namespace

std::vector<BlockingPair> find_blocking_pairs(const Matching& m, std::span<const UserId> users,
                                              const UserPreferences& prefs, const GlobalList& gl,
                                              std::span<const std::size_t> capacities) {
  check_shape(m, prefs, gl, capacities.size());
  const Seats seats = seats_of(m, users, gl);
  std::vector<BlockingPair> out;
  for (auto u : users) {
    const auto current = m.fog_of(u);
    for (auto f : prefs.order(u)) {
      if (current && *current == f) break;  // later fogs are worse than μ(u)
      const auto i = f.value;
      const bool free_seat = seats.count[i] < capacities[i];
      const bool envies = seats.any[i] && seats.worst_rank[i] > gl.rank(u);
      if (free_seat || envies) out.push_back({u, f});
    }
  }
  std::sort(out.begin(), out.end(), [](const BlockingPair& a, const BlockingPair& b) {
    return a.user != b.user ? a.user < b.user : a.fog < b.fog;
  });
  return out;
}

std::vector<BlockingPair> find_blocking_pairs(const Matching& m, const UserPreferences& prefs, const GlobalList& gl,
                                              const QuotaVector& quotas) {
  const auto caps = quotas.maxima();
  std::vector<UserId> everyone(m.user_count());
  for (std::size_t u = 0; u < everyone.size(); ++u) everyone[u] = UserId{u};
  return find_blocking_pairs(m, everyone, prefs, gl, caps);
}

std::vector<FogId> AuditReport::flagged_fogs() const {
  std::vector<FogId> out;
  for (const auto& f : fogs) {
    if (f.below_min() || f.above_max()) out.push_back(f.fog);
  }
  return out;
}

namespace {

AuditReport occupancy_report(const Matching& m, const QuotaVector& quotas) {
  AuditReport r;
  r.consistent = m.consistent();
  r.feasible = matching_is_feasible(m, quotas);
  r.unmatched = m.unmatched_count();
  for (std::size_t f = 0; f < quotas.size(); ++f) {
    const FogId id{f};
    r.fogs.push_back({id, f < m.fog_count() ? m.occupancy(id) : 0, quotas[id]});
  }
  return r;
}

}  // namespace

AuditReport audit(const Matching& m, const QuotaVector& quotas, const UserPreferences& prefs, const GlobalList& gl) {
  AuditReport r = occupancy_report(m, quotas);
  r.blocking_pairs = find_blocking_pairs(m, prefs, gl, quotas).size();
  return r;
}

AuditReport audit(const MsdaResult& result, const QuotaVector& quotas, const UserPreferences& prefs,
                  const GlobalList& gl) {
  AuditReport r = occupancy_report(result.matching, quotas);
  for (const auto& stage : result.stages) {
    // Only this stage's matches occupy the reduced capacities it ran with.
    Matching local(result.matching.user_count(), result.matching.fog_count());
    for (auto u : stage.matched) local.assign(u, *result.matching.fog_of(u));
    r.blocking_pairs += find_blocking_pairs(local, stage.subgroup, prefs, gl, stage.capacities).size();
  }
  return r;
}

}  // namespace fogmatch
