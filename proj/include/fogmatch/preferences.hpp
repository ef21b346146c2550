#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "fogmatch/types.hpp"

namespace fogmatch {

enum class UserCriterion {
  ExpectedDelay,  // ascending empty-queue delay omega_u / C_f + propagation
  Distance,       // ascending geometric distance
};

enum class GlobalCriterion {
  TaskSizeDesc,  // largest omega_u first
  ById,          // ascending UserId
  Custom,        // caller-supplied order
};

UserCriterion parse_user_criterion(std::string_view name);
GlobalCriterion parse_global_criterion(std::string_view name);
std::string_view to_string(UserCriterion c);
std::string_view to_string(GlobalCriterion c);

// Strict total orders over fogs, one per user, most preferred first.
class UserPreferences {
 public:
  UserPreferences() = default;
  // Every row must be a permutation of [0, fog_count).
  UserPreferences(std::vector<std::vector<FogId>> orders, std::size_t fog_count);

  std::size_t user_count() const { return orders_.size(); }
  std::size_t fog_count() const { return fog_count_; }
  std::span<const FogId> order(UserId u) const { return orders_.at(u.value); }
  // 0 is the most preferred fog.
  std::size_t rank(UserId u, FogId f) const { return ranks_.at(u.value).at(f.value); }
  bool prefers(UserId u, FogId a, FogId b) const { return rank(u, a) < rank(u, b); }

  friend bool operator==(const UserPreferences& a, const UserPreferences& b) {
    return a.orders_ == b.orders_ && a.fog_count_ == b.fog_count_;
  }

 private:
  std::vector<std::vector<FogId>> orders_;
  std::vector<std::vector<std::size_t>> ranks_;
  std::size_t fog_count_ = 0;
};

// The single ranking of users shared by every fog, best first.
class GlobalList {
 public:
  GlobalList() = default;
  // Must be a permutation of [0, order.size()).
  explicit GlobalList(std::vector<UserId> order);

  std::size_t size() const { return order_.size(); }
  std::span<const UserId> order() const { return order_; }
  std::size_t rank(UserId u) const { return ranks_.at(u.value); }
  bool prefers(UserId a, UserId b) const { return rank(a) < rank(b); }

  friend bool operator==(const GlobalList& a, const GlobalList& b) { return a.order_ == b.order_; }

 private:
  std::vector<UserId> order_;
  std::vector<std::size_t> ranks_;
};

// Fixed before matching from empty-queue estimates; ties go to the lower FogId.
// A fog whose link is unusable ranks after every usable one.
UserPreferences build_user_preferences(const Scenario& scenario, UserCriterion criterion);

// Ties go to the lower UserId. `custom` is only read for GlobalCriterion::Custom.
GlobalList build_global_list(const Scenario& scenario, GlobalCriterion criterion,
                             std::span<const UserId> custom = {});

}  // namespace fogmatch
