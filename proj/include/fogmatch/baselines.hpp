#pragma once

#include <cstdint>

#include "fogmatch/matching.hpp"
#include "fogmatch/types.hpp"

namespace fogmatch {

// Every user to a fog drawn uniformly at random. Quotas are ignored.
Matching random_assignment(const Scenario& scenario, std::uint64_t seed);

// Every user to its geometrically nearest fog, lower FogId on ties. Quotas are ignored.
Matching nearest_assignment(const Scenario& scenario);

}  // namespace fogmatch
