#include "fogmatch/matching.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fogmatch {

QuotaVector::QuotaVector(std::vector<Quota> quotas) : quotas_(std::move(quotas)) {
  for (std::size_t f = 0; f < quotas_.size(); ++f) {
    if (quotas_[f].min > quotas_[f].max) {
      std::ostringstream os;
      os << "quota for f" << f << ": q_min " << quotas_[f].min << " exceeds q_max " << quotas_[f].max;
      throw StructuralError(os.str());
    }
  }
}

QuotaVector QuotaVector::from_fogs(std::span<const FogProfile> fogs) {
  std::vector<Quota> q;
  q.reserve(fogs.size());
  for (const auto& f : fogs) q.push_back({f.q_min, f.q_max});
  return QuotaVector(std::move(q));
}

QuotaVector QuotaVector::upper_only(std::span<const std::size_t> capacities) {
  std::vector<Quota> q;
  q.reserve(capacities.size());
  for (auto c : capacities) q.push_back({0, c});
  return QuotaVector(std::move(q));
}

std::size_t QuotaVector::total_min() const {
  return std::accumulate(quotas_.begin(), quotas_.end(), std::size_t{0},
                         [](std::size_t acc, const Quota& q) { return acc + q.min; });
}

std::size_t QuotaVector::total_max() const {
  return std::accumulate(quotas_.begin(), quotas_.end(), std::size_t{0},
                         [](std::size_t acc, const Quota& q) { return acc + q.max; });
}

std::vector<std::size_t> QuotaVector::maxima() const {
  std::vector<std::size_t> out;
  out.reserve(quotas_.size());
  for (const auto& q : quotas_) out.push_back(q.max);
  return out;
}

std::vector<std::size_t> QuotaVector::minima() const {
  std::vector<std::size_t> out;
  out.reserve(quotas_.size());
  for (const auto& q : quotas_) out.push_back(q.min);
  return out;
}

Matching::Matching(std::size_t user_count, std::size_t fog_count)
    : forward_(user_count), inverse_(fog_count) {}

void Matching::check_user(UserId u) const {
  if (u.value >= forward_.size()) {
    std::ostringstream os;
    os << "unknown user " << u << " (matching has " << forward_.size() << " users)";
    throw StructuralError(os.str());
  }
}

void Matching::check_fog(FogId f) const {
  if (f.value >= inverse_.size()) {
    std::ostringstream os;
    os << "unknown fog " << f << " (matching has " << inverse_.size() << " fogs)";
    throw StructuralError(os.str());
  }
}

void Matching::assign(UserId u, FogId f) {
  check_user(u);
  check_fog(f);
  unassign(u);
  auto& bucket = inverse_[f.value];
  bucket.insert(std::lower_bound(bucket.begin(), bucket.end(), u), u);
  forward_[u.value] = f;
}

void Matching::unassign(UserId u) {
  check_user(u);
  if (auto old = forward_[u.value]) {
    auto& bucket = inverse_[old->value];
    bucket.erase(std::lower_bound(bucket.begin(), bucket.end(), u));
    forward_[u.value].reset();
  }
}

std::optional<FogId> Matching::fog_of(UserId u) const {
  check_user(u);
  return forward_[u.value];
}

std::span<const UserId> Matching::users_of(FogId f) const {
  check_fog(f);
  return inverse_[f.value];
}

std::vector<std::size_t> Matching::occupancies() const {
  std::vector<std::size_t> out;
  out.reserve(inverse_.size());
  for (const auto& bucket : inverse_) out.push_back(bucket.size());
  return out;
}

std::size_t Matching::matched_count() const {
  return static_cast<std::size_t>(
      std::count_if(forward_.begin(), forward_.end(), [](const auto& f) { return f.has_value(); }));
}

bool Matching::consistent() const {
  std::size_t listed = 0;
  for (std::size_t f = 0; f < inverse_.size(); ++f) {
    const auto& bucket = inverse_[f];
    if (!std::is_sorted(bucket.begin(), bucket.end())) return false;
    if (std::adjacent_find(bucket.begin(), bucket.end()) != bucket.end()) return false;
    for (auto u : bucket) {
      if (u.value >= forward_.size() || forward_[u.value] != FogId{f}) return false;
    }
    listed += bucket.size();
  }
  return listed == matched_count();
}

int assignment_indicator(const Matching& m, UserId u, FogId f) {
  if (f.value >= m.fog_count()) {
    std::ostringstream os;
    os << "unknown fog " << f;
    throw StructuralError(os.str());
  }
  return m.fog_of(u) == f ? 1 : 0;
}

bool matching_is_feasible(const Matching& m, std::span<const FogProfile> fogs) {
  std::vector<Quota> q;
  q.reserve(fogs.size());
  for (const auto& f : fogs) q.push_back({f.q_min, f.q_max});
  return matching_is_feasible(m, QuotaVector(std::move(q)));
}

bool matching_is_feasible(const Matching& m, const QuotaVector& quotas) {
  return quota_violations(m, quotas) == 0;
}

std::size_t quota_violations(const Matching& m, const QuotaVector& quotas) {
  for (std::size_t f = quotas.size(); f < m.fog_count(); ++f) {
    if (m.occupancy(FogId{f}) > 0) {
      std::ostringstream os;
      os << "matching assigns users to f" << f << " but only " << quotas.size() << " fogs are known";
      throw StructuralError(os.str());
    }
  }
  std::size_t violations = 0;
  for (std::size_t f = 0; f < quotas.size(); ++f) {
    std::size_t occ = f < m.fog_count() ? m.occupancy(FogId{f}) : 0;
    const auto& q = quotas[FogId{f}];
    if (occ < q.min || occ > q.max) ++violations;
  }
  return violations;
}

}  // namespace fogmatch
