#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fogmatch/matching.hpp"
#include "fogmatch/preferences.hpp"

namespace fogmatch {

// User-proposing deferred acceptance for the given subset of users.
//
// Free users propose down their preference lists. A fog tentatively holds up
// to capacities[f] proposers, keeping the best ranked under the global list
// and rejecting the rest. Users who are rejected everywhere stay unmatched.
// Users outside `users` are left unmatched in the result.
//
// The result is the user-optimal stable matching for (prefs, gl, capacities)
// restricted to `users`, independent of proposal order.
Matching deferred_acceptance(std::span<const UserId> users, const UserPreferences& prefs,
                             const GlobalList& gl, std::span<const std::size_t> capacities);

// Convenience overload over every user in the global list.
Matching deferred_acceptance(const UserPreferences& prefs, const GlobalList& gl,
                             std::span<const std::size_t> capacities);

}  // namespace fogmatch
