#pragma once

// Exhaustive reference checks for small instances. The reference routines
// enumerate assignments explicitly and never call into the matching engine;
// only run_verification does, to compare the two.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fogmatch/matching.hpp"
#include "fogmatch/preferences.hpp"

namespace fogmatch::oracle {

// Fog index per user; -1 means unmatched.
using Assignment = std::vector<int>;

struct Instance {
  UserPreferences prefs;
  GlobalList gl;
  QuotaVector quotas;
};

// Uniformly random preference permutations and global list, quotas drawn so
// that 0 <= q_min <= q_max <= max_quota.
Instance random_instance(std::mt19937_64& rng, std::size_t users, std::size_t fogs, std::size_t max_quota);

// Random instance whose quota window contains the user count.
Instance random_feasible_instance(std::mt19937_64& rng, std::size_t users, std::size_t fogs);

// Visits all (F + 1)^U assignments when allow_unmatched, else all F^U.
void for_each_assignment(std::size_t users, std::size_t fogs, bool allow_unmatched,
                         const std::function<void(const Assignment&)>& visit);

Matching to_matching(const Assignment& a, std::size_t fogs);
Assignment to_assignment(const Matching& m);

// Occupancy never exceeds capacities.
bool within_capacity(const Assignment& a, const std::vector<std::size_t>& capacities);

// (u, f) blocks when u ranks f above its fog (or is unmatched) and f has a
// free seat or seats someone the global list ranks below u.
bool blocks(const Assignment& a, std::size_t u, std::size_t f, const UserPreferences& prefs,
            const GlobalList& gl, const std::vector<std::size_t>& capacities);
std::size_t count_blocking(const Assignment& a, const UserPreferences& prefs, const GlobalList& gl,
                           const std::vector<std::size_t>& capacities);

// Every stable assignment within capacity, unmatched users allowed.
std::vector<Assignment> stable_assignments(const UserPreferences& prefs, const GlobalList& gl,
                                           const std::vector<std::size_t>& capacities);

// The stable assignment every user weakly prefers to all other stable ones.
// Ranks: fog rank, unmatched worst.
Assignment user_optimal(const std::vector<Assignment>& stable, const UserPreferences& prefs);

// Full assignments meeting every quota with no justified envy: nobody prefers
// a fog that seats a user the global list ranks below them.
std::vector<Assignment> fair_feasible_assignments(const UserPreferences& prefs, const GlobalList& gl,
                                                  const QuotaVector& quotas);

// Whether any full assignment satisfies every quota.
bool feasible_assignment_exists(std::size_t users, const QuotaVector& quotas);

struct VerifyCase {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool passed() const { return failures == 0; }
};

// Randomized small-instance suite: deferred acceptance against exhaustive
// enumeration of stable assignments, the engine's blocking-pair finder against
// the definition, msda feasibility against enumeration of feasible
// assignments, and msda reducing to deferred acceptance without lower quotas.
std::vector<VerifyCase> run_verification(std::size_t instances, std::size_t max_users, std::size_t max_fogs,
                                         std::uint64_t seed);

}  // namespace fogmatch::oracle
