#include "fogmatch/preferences.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "fogmatch/latency.hpp"

namespace fogmatch {

namespace {

[[noreturn]] void bad_name(std::string_view what, std::string_view name) {
  throw StructuralError("unknown " + std::string(what) + " '" + std::string(name) + "'");
}

}  // namespace

UserCriterion parse_user_criterion(std::string_view name) {
  if (name == "by-expected-delay") return UserCriterion::ExpectedDelay;
  if (name == "by-distance") return UserCriterion::Distance;
  bad_name("user preference criterion", name);
}

GlobalCriterion parse_global_criterion(std::string_view name) {
  if (name == "by-task-size-desc") return GlobalCriterion::TaskSizeDesc;
  if (name == "by-id") return GlobalCriterion::ById;
  if (name == "custom-order") return GlobalCriterion::Custom;
  bad_name("global list criterion", name);
}

std::string_view to_string(UserCriterion c) {
  switch (c) {
    case UserCriterion::ExpectedDelay: return "by-expected-delay";
    case UserCriterion::Distance: return "by-distance";
  }
  return "?";
}

std::string_view to_string(GlobalCriterion c) {
  switch (c) {
    case GlobalCriterion::TaskSizeDesc: return "by-task-size-desc";
    case GlobalCriterion::ById: return "by-id";
    case GlobalCriterion::Custom: return "custom-order";
  }
  return "?";
}

UserPreferences::UserPreferences(std::vector<std::vector<FogId>> orders, std::size_t fog_count)
    : orders_(std::move(orders)), fog_count_(fog_count) {
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  ranks_.reserve(orders_.size());
  for (std::size_t u = 0; u < orders_.size(); ++u) {
    const auto& order = orders_[u];
    std::vector<std::size_t> rank(fog_count_, unset);
    bool ok = order.size() == fog_count_;
    for (std::size_t i = 0; ok && i < order.size(); ++i) {
      const auto f = order[i].value;
      ok = f < fog_count_ && rank[f] == unset;
      if (ok) rank[f] = i;
    }
    if (!ok) {
      std::ostringstream os;
      os << "preference order of u" << u << " is not a permutation of " << fog_count_ << " fogs";
      throw StructuralError(os.str());
    }
    ranks_.push_back(std::move(rank));
  }
}

GlobalList::GlobalList(std::vector<UserId> order) : order_(std::move(order)) {
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  ranks_.assign(order_.size(), unset);
  for (std::size_t i = 0; i < order_.size(); ++i) {
    const auto u = order_[i].value;
    if (u >= order_.size() || ranks_[u] != unset) {
      throw StructuralError("global list is not a permutation of the users");
    }
    ranks_[u] = i;
  }
}

UserPreferences build_user_preferences(const Scenario& scenario, UserCriterion criterion) {
  const auto fogs = scenario.fogs();
  std::vector<std::vector<FogId>> orders;
  orders.reserve(scenario.user_count());
  std::vector<double> score(fogs.size());
  for (const auto& user : scenario.users()) {
    for (const auto& fog : fogs) {
      double s = 0.0;
      switch (criterion) {
        case UserCriterion::ExpectedDelay:
          try {
            s = user.task_size / fog.capacity + propagation_delay(user, fog, scenario.channel());
          } catch (const LinkError&) {
            s = std::numeric_limits<double>::infinity();
          }
          break;
        case UserCriterion::Distance:
          s = distance(user.position, fog.position);
          break;
      }
      score[fog.id.value] = s;
    }
    std::vector<FogId> order(fogs.size());
    for (std::size_t f = 0; f < fogs.size(); ++f) order[f] = FogId{f};
    std::stable_sort(order.begin(), order.end(),
                     [&](FogId a, FogId b) { return score[a.value] < score[b.value]; });
    orders.push_back(std::move(order));
  }
  return UserPreferences(std::move(orders), fogs.size());
}

GlobalList build_global_list(const Scenario& scenario, GlobalCriterion criterion, std::span<const UserId> custom) {
  if (criterion == GlobalCriterion::Custom) {
    if (custom.size() != scenario.user_count()) {
      throw StructuralError("custom global list must rank every user exactly once");
    }
    return GlobalList(std::vector<UserId>(custom.begin(), custom.end()));
  }
  std::vector<UserId> order(scenario.user_count());
  for (std::size_t u = 0; u < order.size(); ++u) order[u] = UserId{u};
  if (criterion == GlobalCriterion::TaskSizeDesc) {
    const auto users = scenario.users();
    std::stable_sort(order.begin(), order.end(), [&](UserId a, UserId b) {
      return users[a.value].task_size > users[b.value].task_size;
    });
  }
  return GlobalList(std::move(order));
}

}  // namespace fogmatch
