#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fogmatch/matching.hpp"
#include "fogmatch/msda.hpp"
#include "fogmatch/preferences.hpp"

namespace fogmatch {

struct BlockingPair {
  UserId user;
  FogId fog;
  friend bool operator==(const BlockingPair&, const BlockingPair&) = default;
};

// All (u, f) where u prefers f to its current fog (any fog beats being
// unmatched) and f either has fewer than q_max users or holds someone ranked
// below u in the global list. Sorted by user, then fog.
std::vector<BlockingPair> find_blocking_pairs(const Matching& m, const UserPreferences& prefs,
                                              const GlobalList& gl, const QuotaVector& quotas);

// Same check restricted to `users`: only they can block, and only their
// assignments count toward occupancy. Used to certify a single MSDA stage.
std::vector<BlockingPair> find_blocking_pairs(const Matching& m, std::span<const UserId> users,
                                              const UserPreferences& prefs, const GlobalList& gl,
                                              std::span<const std::size_t> capacities);

struct FogOccupancy {
  FogId fog;
  std::size_t occupancy = 0;
  Quota quota;
  bool below_min() const { return occupancy < quota.min; }
  bool above_max() const { return occupancy > quota.max; }
};

struct AuditReport {
  bool consistent = true;
  bool feasible = true;
  std::vector<FogOccupancy> fogs;
  std::size_t unmatched = 0;
  std::size_t blocking_pairs = 0;

  std::vector<FogId> flagged_fogs() const;
  bool green() const { return consistent && feasible && unmatched == 0 && blocking_pairs == 0; }
};

// Blocking pairs are counted against the q_max of `quotas`.
AuditReport audit(const Matching& m, const QuotaVector& quotas, const UserPreferences& prefs,
                  const GlobalList& gl);

// Blocking pairs are counted per stage, against the reduced capacities the
// stage actually ran with, over that stage's subgroup.
AuditReport audit(const MsdaResult& result, const QuotaVector& quotas, const UserPreferences& prefs,
                  const GlobalList& gl);

}  // namespace fogmatch
