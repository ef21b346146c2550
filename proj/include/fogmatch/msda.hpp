#pragma once

#include <cstddef>
#include <vector>

#include "fogmatch/matching.hpp"
#include "fogmatch/preferences.hpp"

namespace fogmatch {

// Snapshot of one stage of multi-stage deferred acceptance.
struct StageTrace {
  std::size_t stage = 0;  // 1-based
  // Least-wanted remaining users held back this stage, in GL order.
  std::vector<UserId> reserved;
  // Users handed to deferred acceptance this stage, in GL order.
  std::vector<UserId> subgroup;
  // true: the subgroup was the reserved set, run with the current minimum
  // quotas as capacities. false: the subgroup was the previously reserved set
  // minus the new one, run with the current maximum quotas.
  bool used_min_quotas = false;
  std::vector<std::size_t> capacities;
  std::vector<UserId> matched;
  std::vector<std::size_t> received;  // per fog
  std::vector<Quota> quotas_before;
  std::vector<Quota> quotas_after;
};

struct MsdaResult {
  Matching matching;
  std::vector<StageTrace> stages;
};

// Multi-stage deferred acceptance with minimum and maximum quotas.
//
// Each stage reserves the r least-wanted remaining users under the global
// list, where r is the sum of the current minimum quotas. If the previously
// reserved users not reserved again form a nonempty group, deferred acceptance
// places them under the current maximum quotas; otherwise the reserved users
// are placed under the current minimum quotas. Matches are final. Each fog's
// maximum quota drops by the number of users it received, and its minimum
// quota by the same amount floored at zero.
//
// Requires sum q_min <= |U| <= sum q_max (InfeasibleQuotaError otherwise).
// The result matches every user and satisfies every original quota.
MsdaResult msda(const UserPreferences& prefs, const GlobalList& gl, const QuotaVector& quotas);

}  // namespace fogmatch
