#pragma once

#include <span>
#include <vector>

#include "fogmatch/matching.hpp"
#include "fogmatch/preferences.hpp"
#include "fogmatch/types.hpp"

namespace fogmatch {

struct DelayBreakdown {
  double processing = 0.0;   // s
  double queueing = 0.0;     // s
  double propagation = 0.0;  // s
  double total = 0.0;        // s
};

// Shannon rate bw * log2(1 + SINR) of the user/fog link, in bits per second.
// Distances below the reference distance are clamped to it.
double transmission_rate(const UserProfile& u, const FogProfile& f, const ChannelModel& ch);

// tx_payload / transmission_rate. Throws LinkError when the rate is zero.
double propagation_delay(const UserProfile& u, const FogProfile& f, const ChannelModel& ch);

// Work already waiting at f, drained at C_f.
double queueing_delay(std::span<const double> pending, const FogProfile& f);

DelayBreakdown response_delay(const UserProfile& u, const FogProfile& f,
                              std::span<const double> pending, const ChannelModel& ch);

// Per-user response delay under m. Users at a fog are served in GL order, so a
// user's queue holds every user at the same fog ranked above it. Unmatched
// users get NaN.
std::vector<double> user_delays(const Matching& m, const Scenario& scenario, const GlobalList& gl);

// p_f: sum of D_{u,f} over users matched to f.
double fog_load(const Matching& m, FogId f, const Scenario& scenario, const GlobalList& gl);
std::vector<double> fog_loads(const Matching& m, const Scenario& scenario, const GlobalList& gl);

// max_f p_f - min_f p_f.
double load_imbalance(const Matching& m, const Scenario& scenario, const GlobalList& gl);
double load_imbalance(std::span<const double> loads);

double total_delay(const Matching& m, const Scenario& scenario, const GlobalList& gl);

}  // namespace fogmatch
