#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fogmatch {

// Errors ---------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad ids, violated field invariants, inconsistent sizes.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// The quota window admits no feasible matching.
class InfeasibleQuotaError : public Error {
 public:
  using Error::Error;
};

// A user/fog link whose rate underflows to zero.
class LinkError : public Error {
 public:
  using Error::Error;
};

// A broken internal invariant. Reaching this is a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

// Identifiers ----------------------------------------------------------------

struct UserId {
  std::size_t value = 0;
  friend constexpr auto operator<=>(UserId, UserId) = default;
};

struct FogId {
  std::size_t value = 0;
  friend constexpr auto operator<=>(FogId, FogId) = default;
};

inline std::ostream& operator<<(std::ostream& os, UserId u) { return os << 'u' << u.value; }
inline std::ostream& operator<<(std::ostream& os, FogId f) { return os << 'f' << f.value; }

// Profiles -------------------------------------------------------------------

struct Position {
  double x = 0.0;  // meters
  double y = 0.0;
  friend bool operator==(const Position&, const Position&) = default;
};

double distance(Position a, Position b);

struct UserProfile {
  UserId id;
  double task_size = 0.0;   // work units
  double tx_payload = 0.0;  // bits on the wire, request + response
  Position position;
  friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

struct FogProfile {
  FogId id;
  double capacity = 0.0;   // work units per second
  double bandwidth = 0.0;  // Hz
  Position position;
  std::size_t q_min = 0;
  std::size_t q_max = 0;
  friend bool operator==(const FogProfile&, const FogProfile&) = default;
};

// Log-distance path loss: SINR(d) = tx_power * (d / reference_distance)^-alpha / noise_power.
struct ChannelModel {
  double tx_power = 1.0;     // W
  double noise_power = 1e-9; // W
  double path_loss_exponent = 3.0;
  double reference_distance = 1.0;  // m
  friend bool operator==(const ChannelModel&, const ChannelModel&) = default;
};

void validate(const UserProfile& u);
void validate(const FogProfile& f);
void validate(const ChannelModel& ch);

// Immutable after construction; the constructor checks every field invariant
// and that ids are dense and in position order.
class Scenario {
 public:
  Scenario(std::vector<UserProfile> users, std::vector<FogProfile> fogs, ChannelModel channel,
           std::uint64_t rng_seed = 0);

  std::span<const UserProfile> users() const { return users_; }
  std::span<const FogProfile> fogs() const { return fogs_; }
  const UserProfile& user(UserId u) const;
  const FogProfile& fog(FogId f) const;
  const ChannelModel& channel() const { return channel_; }
  std::uint64_t rng_seed() const { return rng_seed_; }
  std::size_t user_count() const { return users_.size(); }
  std::size_t fog_count() const { return fogs_.size(); }

  friend bool operator==(const Scenario&, const Scenario&) = default;

 private:
  std::vector<UserProfile> users_;
  std::vector<FogProfile> fogs_;
  ChannelModel channel_;
  std::uint64_t rng_seed_ = 0;
};

}  // namespace fogmatch

template <>
struct std::hash<fogmatch::UserId> {
  std::size_t operator()(fogmatch::UserId u) const noexcept { return std::hash<std::size_t>{}(u.value); }
};

template <>
struct std::hash<fogmatch::FogId> {
  std::size_t operator()(fogmatch::FogId f) const noexcept { return std::hash<std::size_t>{}(f.value); }
};
