#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fogmatch/types.hpp"

namespace fogmatch {

struct Quota {
  std::size_t min = 0;
  std::size_t max = 0;
  friend bool operator==(const Quota&, const Quota&) = default;
};

// Per-fog (q_min, q_max) in user counts. 0 <= q_min <= q_max for every fog.
class QuotaVector {
 public:
  QuotaVector() = default;
  explicit QuotaVector(std::vector<Quota> quotas);

  static QuotaVector from_fogs(std::span<const FogProfile> fogs);
  // q_min = 0, q_max = capacities[f].
  static QuotaVector upper_only(std::span<const std::size_t> capacities);

  std::size_t size() const { return quotas_.size(); }
  const Quota& operator[](FogId f) const { return quotas_.at(f.value); }
  std::span<const Quota> values() const { return quotas_; }

  std::size_t total_min() const;
  std::size_t total_max() const;
  std::vector<std::size_t> maxima() const;
  std::vector<std::size_t> minima() const;

  friend bool operator==(const QuotaVector&, const QuotaVector&) = default;

 private:
  std::vector<Quota> quotas_;
};

// One-to-many assignment of users to fogs. Each user holds at most one fog;
// the per-fog inverse is kept sorted by UserId and always agrees with the
// forward map.
class Matching {
 public:
  Matching() = default;
  Matching(std::size_t user_count, std::size_t fog_count);

  std::size_t user_count() const { return forward_.size(); }
  std::size_t fog_count() const { return inverse_.size(); }

  // Moves the user if it is already matched elsewhere.
  void assign(UserId u, FogId f);
  void unassign(UserId u);

  std::optional<FogId> fog_of(UserId u) const;
  std::span<const UserId> users_of(FogId f) const;
  std::size_t occupancy(FogId f) const { return users_of(f).size(); }
  std::vector<std::size_t> occupancies() const;
  std::size_t matched_count() const;
  std::size_t unmatched_count() const { return user_count() - matched_count(); }

  // Forward/inverse consistency check; true for any Matching built through
  // the public interface.
  bool consistent() const;

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  void check_user(UserId u) const;
  void check_fog(FogId f) const;

  std::vector<std::optional<FogId>> forward_;
  std::vector<std::vector<UserId>> inverse_;
};

// x_{u,f}: 1 iff u is matched to f.
int assignment_indicator(const Matching& m, UserId u, FogId f);

// q_min(f) <= |mu(f)| <= q_max(f) for every fog. Throws StructuralError if
// the matching references a fog outside the given list.
bool matching_is_feasible(const Matching& m, std::span<const FogProfile> fogs);
bool matching_is_feasible(const Matching& m, const QuotaVector& quotas);

// Number of fogs whose occupancy falls outside [q_min, q_max].
std::size_t quota_violations(const Matching& m, const QuotaVector& quotas);

}  // namespace fogmatch
