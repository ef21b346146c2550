#include "fogmatch/baselines.hpp"

#include <random>

namespace fogmatch {

Matching random_assignment(const Scenario& scenario, std::uint64_t seed) {
  Matching m(scenario.user_count(), scenario.fog_count());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, scenario.fog_count() - 1);
  for (std::size_t u = 0; u < scenario.user_count(); ++u) m.assign(UserId{u}, FogId{pick(rng)});
  return m;
}

Matching nearest_assignment(const Scenario& scenario) {
  Matching m(scenario.user_count(), scenario.fog_count());
  const auto fogs = scenario.fogs();
  for (const auto& user : scenario.users()) {
    std::size_t best = 0;
    double best_d = distance(user.position, fogs[0].position);
    for (std::size_t f = 1; f < fogs.size(); ++f) {
      const double d = distance(user.position, fogs[f].position);
      if (d < best_d) {
        best = f;
        best_d = d;
      }
    }
    m.assign(user.id, FogId{best});
  }
  return m;
}

}  // namespace fogmatch
