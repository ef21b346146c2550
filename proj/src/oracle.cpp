#include "fogmatch/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fogmatch/audit.hpp"
#include "fogmatch/deferred_acceptance.hpp"
#include "fogmatch/msda.hpp"

namespace fogmatch::oracle {

namespace {

UserPreferences random_prefs(std::mt19937_64& rng, std::size_t users, std::size_t fogs) {
  std::vector<std::vector<FogId>> orders(users);
  for (auto& order : orders) {
    for (std::size_t f = 0; f < fogs; ++f) order.push_back(FogId{f});
    std::shuffle(order.begin(), order.end(), rng);
  }
  return UserPreferences(std::move(orders), fogs);
}

GlobalList random_gl(std::mt19937_64& rng, std::size_t users) {
  std::vector<UserId> order(users);
  for (std::size_t u = 0; u < users; ++u) order[u] = UserId{u};
  std::shuffle(order.begin(), order.end(), rng);
  return GlobalList(std::move(order));
}

std::vector<std::size_t> occupancy(const Assignment& a, std::size_t fogs) {
  std::vector<std::size_t> occ(fogs, 0);
  for (int f : a) {
    if (f >= 0) ++occ[static_cast<std::size_t>(f)];
  }
  return occ;
}

}  // namespace

Instance random_instance(std::mt19937_64& rng, std::size_t users, std::size_t fogs, std::size_t max_quota) {
  std::uniform_int_distribution<std::size_t> draw(0, max_quota);
  std::vector<Quota> q(fogs);
  for (auto& quota : q) {
    auto a = draw(rng);
    auto b = draw(rng);
    quota = {std::min(a, b), std::max(a, b)};
  }
  return {random_prefs(rng, users, fogs), random_gl(rng, users), QuotaVector(std::move(q))};
}

Instance random_feasible_instance(std::mt19937_64& rng, std::size_t users, std::size_t fogs) {
  const std::size_t cap = std::max<std::size_t>(1, (2 * users + fogs - 1) / fogs);
  while (true) {
    auto inst = random_instance(rng, users, fogs, cap);
    if (inst.quotas.total_min() <= users && users <= inst.quotas.total_max()) return inst;
  }
}

void for_each_assignment(std::size_t users, std::size_t fogs, bool allow_unmatched,
                         const std::function<void(const Assignment&)>& visit) {
  const int lo = allow_unmatched ? -1 : 0;
  const int hi = static_cast<int>(fogs) - 1;
  if (hi < lo) return;
  Assignment a(users, lo);
  while (true) {
    visit(a);
    std::size_t i = 0;
    while (i < users && a[i] == hi) a[i++] = lo;
    if (i == users) return;
    ++a[i];
  }
}

Matching to_matching(const Assignment& a, std::size_t fogs) {
  Matching m(a.size(), fogs);
  for (std::size_t u = 0; u < a.size(); ++u) {
    if (a[u] >= 0) m.assign(UserId{u}, FogId{static_cast<std::size_t>(a[u])});
  }
  return m;
}

Assignment to_assignment(const Matching& m) {
  Assignment a(m.user_count(), -1);
  for (std::size_t u = 0; u < a.size(); ++u) {
    if (auto f = m.fog_of(UserId{u})) a[u] = static_cast<int>(f->value);
  }
  return a;
}

bool within_capacity(const Assignment& a, const std::vector<std::size_t>& capacities) {
  const auto occ = occupancy(a, capacities.size());
  for (std::size_t f = 0; f < capacities.size(); ++f) {
    if (occ[f] > capacities[f]) return false;
  }
  return true;
}

bool blocks(const Assignment& a, std::size_t u, std::size_t f, const UserPreferences& prefs, const GlobalList& gl,
            const std::vector<std::size_t>& capacities) {
  const UserId user{u};
  const FogId fog{f};
  if (a[u] == static_cast<int>(f)) return false;
  const bool wants = a[u] < 0 || prefs.rank(user, fog) < prefs.rank(user, FogId{static_cast<std::size_t>(a[u])});
  if (!wants) return false;
  std::size_t seated = 0;
  bool outranks_someone = false;
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (a[v] != static_cast<int>(f)) continue;
    ++seated;
    if (gl.rank(user) < gl.rank(UserId{v})) outranks_someone = true;
  }
  return seated < capacities[f] || outranks_someone;
}

std::size_t count_blocking(const Assignment& a, const UserPreferences& prefs, const GlobalList& gl,
                           const std::vector<std::size_t>& capacities) {
  std::size_t n = 0;
  for (std::size_t u = 0; u < a.size(); ++u) {
    for (std::size_t f = 0; f < capacities.size(); ++f) {
      if (blocks(a, u, f, prefs, gl, capacities)) ++n;
    }
  }
  return n;
}

std::vector<Assignment> stable_assignments(const UserPreferences& prefs, const GlobalList& gl,
                                           const std::vector<std::size_t>& capacities) {
  std::vector<Assignment> out;
  for_each_assignment(prefs.user_count(), capacities.size(), true, [&](const Assignment& a) {
    if (within_capacity(a, capacities) && count_blocking(a, prefs, gl, capacities) == 0) out.push_back(a);
  });
  return out;
}

Assignment user_optimal(const std::vector<Assignment>& stable, const UserPreferences& prefs) {
  if (stable.empty()) return {};
  const std::size_t users = stable.front().size();
  auto rank = [&](std::size_t u, int f) {
    return f < 0 ? prefs.fog_count() : prefs.rank(UserId{u}, FogId{static_cast<std::size_t>(f)});
  };
  Assignment best(users);
  for (std::size_t u = 0; u < users; ++u) {
    best[u] = stable.front()[u];
    for (const auto& a : stable) {
      if (rank(u, a[u]) < rank(u, best[u])) best[u] = a[u];
    }
  }
  return best;
}

std::vector<Assignment> fair_feasible_assignments(const UserPreferences& prefs, const GlobalList& gl,
                                                  const QuotaVector& quotas) {
  std::vector<Assignment> out;
  const std::size_t fogs = quotas.size();
  for_each_assignment(prefs.user_count(), fogs, false, [&](const Assignment& a) {
    const auto occ = occupancy(a, fogs);
    for (std::size_t f = 0; f < fogs; ++f) {
      if (occ[f] < quotas[FogId{f}].min || occ[f] > quotas[FogId{f}].max) return;
    }
    for (std::size_t u = 0; u < a.size(); ++u) {
      for (std::size_t v = 0; v < a.size(); ++v) {
        const UserId uu{u};
        const FogId fv{static_cast<std::size_t>(a[v])};
        if (a[v] != a[u] && gl.rank(uu) < gl.rank(UserId{v}) &&
            prefs.rank(uu, fv) < prefs.rank(uu, FogId{static_cast<std::size_t>(a[u])})) {
          return;
        }
      }
    }
    out.push_back(a);
  });
  return out;
}

bool feasible_assignment_exists(std::size_t users, const QuotaVector& quotas) {
  bool found = false;
  for_each_assignment(users, quotas.size(), false, [&](const Assignment& a) {
    if (found) return;
    const auto occ = occupancy(a, quotas.size());
    bool ok = true;
    for (std::size_t f = 0; f < quotas.size(); ++f) {
      ok = ok && occ[f] >= quotas[FogId{f}].min && occ[f] <= quotas[FogId{f}].max;
    }
    found = ok;
  });
  return found;
}

namespace {

std::string describe(const Instance& inst) {
  std::ostringstream os;
  os << inst.gl.size() << " users, " << inst.quotas.size() << " fogs, GL";
  for (auto u : inst.gl.order()) os << ' ' << u;
  os << ", quotas";
  for (const auto& q : inst.quotas.values()) os << " [" << q.min << ',' << q.max << ']';
  return os.str();
}

VerifyCase named(std::string name) {
  VerifyCase c;
  c.name = std::move(name);
  return c;
}

void record(VerifyCase& c, bool ok, const Instance& inst) {
  ++c.instances;
  if (ok) return;
  if (c.failures++ == 0) c.first_failure = describe(inst);
}

}  // namespace

std::vector<VerifyCase> run_verification(std::size_t instances, std::size_t max_users, std::size_t max_fogs,
                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_users(1, max_users);
  std::uniform_int_distribution<std::size_t> pick_fogs(1, max_fogs);

  auto da_stable = named("deferred acceptance is the user-optimal stable matching");
  auto finder = named("blocking-pair finder agrees with the definition");
  auto msda_feasible = named("msda meets every quota when a feasible matching exists");
  auto window = named("quota window predicts feasibility");
  auto reduction = named("msda without lower quotas equals deferred acceptance");

  for (std::size_t i = 0; i < instances; ++i) {
    const auto users = pick_users(rng);
    const auto fogs = pick_fogs(rng);
    const auto inst = random_instance(rng, users, fogs, users);
    const auto caps = inst.quotas.maxima();

    const auto da = deferred_acceptance(inst.prefs, inst.gl, caps);
    const auto stable = stable_assignments(inst.prefs, inst.gl, caps);
    const auto da_a = to_assignment(da);
    record(da_stable,
           std::find(stable.begin(), stable.end(), da_a) != stable.end() && user_optimal(stable, inst.prefs) == da_a,
           inst);

    bool agree = find_blocking_pairs(da, inst.prefs, inst.gl, inst.quotas).size() ==
                 count_blocking(da_a, inst.prefs, inst.gl, caps);
    // Also on an arbitrary assignment, which usually has blocking pairs.
    Assignment other(users);
    std::uniform_int_distribution<int> any_fog(-1, static_cast<int>(fogs) - 1);
    for (auto& f : other) f = any_fog(rng);
    agree = agree && find_blocking_pairs(to_matching(other, fogs), inst.prefs, inst.gl, inst.quotas).size() ==
                         count_blocking(other, inst.prefs, inst.gl, caps);
    record(finder, agree, inst);

    const bool exists = feasible_assignment_exists(users, inst.quotas);
    const bool in_window = inst.quotas.total_min() <= users && users <= inst.quotas.total_max();
    record(window, exists == in_window, inst);
    if (exists) {
      bool ok = false;
      try {
        const auto out = msda(inst.prefs, inst.gl, inst.quotas);
        ok = out.matching.unmatched_count() == 0 && matching_is_feasible(out.matching, inst.quotas);
      } catch (const Error&) {
        ok = false;
      }
      record(msda_feasible, ok, inst);
    }

    const auto upper = QuotaVector::upper_only(caps);
    if (users <= upper.total_max()) {
      record(reduction, msda(inst.prefs, inst.gl, upper).matching == da, inst);
    }
  }
  return {da_stable, finder, window, msda_feasible, reduction};
}

}  // namespace fogmatch::oracle
