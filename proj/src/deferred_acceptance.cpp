#include "fogmatch/deferred_acceptance.hpp"

#include <deque>
#include <set>
#include <sstream>

namespace fogmatch {

Matching deferred_acceptance(std::span<const UserId> users, const UserPreferences& prefs, const GlobalList& gl,
                             std::span<const std::size_t> capacities) {
  const std::size_t fog_count = prefs.fog_count();
  if (capacities.size() != fog_count) {
    std::ostringstream os;
    os << "deferred acceptance: " << capacities.size() << " capacities for " << fog_count << " fogs";
    throw StructuralError(os.str());
  }
  if (gl.size() != prefs.user_count()) {
    throw StructuralError("deferred acceptance: global list and preferences disagree on user count");
  }

  // Held proposers per fog, worst GL rank last.
  std::vector<std::set<std::size_t>> held(fog_count);
  std::vector<std::size_t> next_choice(prefs.user_count(), 0);
  std::vector<bool> seen(prefs.user_count(), false);
  std::deque<UserId> free;
  for (auto u : users) {
    if (u.value >= prefs.user_count()) throw StructuralError("deferred acceptance: unknown user");
    if (seen[u.value]) throw StructuralError("deferred acceptance: user listed twice");
    seen[u.value] = true;
    free.push_back(u);
  }

  while (!free.empty()) {
    const UserId u = free.front();
    free.pop_front();
    const auto order = prefs.order(u);
    auto& next = next_choice[u.value];
    if (next >= order.size()) continue;  // exhausted, stays unmatched
    const FogId f = order[next++];
    auto& slot = held[f.value];
    slot.insert(gl.rank(u));
    if (slot.size() > capacities[f.value]) {
      auto worst = std::prev(slot.end());
      free.push_back(gl.order()[*worst]);
      slot.erase(worst);
    }
  }

  Matching m(prefs.user_count(), fog_count);
  for (std::size_t f = 0; f < fog_count; ++f) {
    for (auto rank : held[f]) m.assign(gl.order()[rank], FogId{f});
  }
  return m;
}

Matching deferred_acceptance(const UserPreferences& prefs, const GlobalList& gl,
                             std::span<const std::size_t> capacities) {
  return deferred_acceptance(gl.order(), prefs, gl, capacities);
}

}  // namespace fogmatch
