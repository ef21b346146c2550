#include "fogmatch/types.hpp"

#include <cmath>
#include <sstream>

namespace fogmatch {

namespace {

template <typename... Parts>
[[noreturn]] void fail(const Parts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  throw StructuralError(os.str());
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

double distance(Position a, Position b) { return std::hypot(a.x - b.x, a.y - b.y); }

void validate(const UserProfile& u) {
  if (!positive_finite(u.task_size)) fail(u.id, ": task size must be > 0");
  if (!positive_finite(u.tx_payload)) fail(u.id, ": tx payload must be > 0");
  if (!std::isfinite(u.position.x) || !std::isfinite(u.position.y)) fail(u.id, ": position must be finite");
}

void validate(const FogProfile& f) {
  if (!positive_finite(f.capacity)) fail(f.id, ": capacity must be > 0");
  if (!positive_finite(f.bandwidth)) fail(f.id, ": bandwidth must be > 0");
  if (!std::isfinite(f.position.x) || !std::isfinite(f.position.y)) fail(f.id, ": position must be finite");
  if (f.q_min > f.q_max) fail(f.id, ": q_min ", f.q_min, " exceeds q_max ", f.q_max);
}

void validate(const ChannelModel& ch) {
  if (!positive_finite(ch.tx_power)) fail("channel: tx power must be > 0");
  if (!positive_finite(ch.noise_power)) fail("channel: noise power must be > 0");
  if (!positive_finite(ch.reference_distance)) fail("channel: reference distance must be > 0");
  if (!std::isfinite(ch.path_loss_exponent) || ch.path_loss_exponent < 2.0)
    fail("channel: path loss exponent must be >= 2");
}

Scenario::Scenario(std::vector<UserProfile> users, std::vector<FogProfile> fogs, ChannelModel channel,
                   std::uint64_t rng_seed)
    : users_(std::move(users)), fogs_(std::move(fogs)), channel_(channel), rng_seed_(rng_seed) {
  if (fogs_.empty()) fail("scenario needs at least one fog");
  for (std::size_t i = 0; i < users_.size(); ++i) {
    if (users_[i].id.value != i) fail("user ids must be dense: position ", i, " holds ", users_[i].id);
    validate(users_[i]);
  }
  for (std::size_t i = 0; i < fogs_.size(); ++i) {
    if (fogs_[i].id.value != i) fail("fog ids must be dense: position ", i, " holds ", fogs_[i].id);
    validate(fogs_[i]);
  }
  validate(channel_);
}

const UserProfile& Scenario::user(UserId u) const {
  if (u.value >= users_.size()) fail("unknown user ", u);
  return users_[u.value];
}

const FogProfile& Scenario::fog(FogId f) const {
  if (f.value >= fogs_.size()) fail("unknown fog ", f);
  return fogs_[f.value];
}

}  // namespace fogmatch
