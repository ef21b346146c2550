#include "fogmatch/msda.hpp"

#include <algorithm>
#include <sstream>

#include "fogmatch/deferred_acceptance.hpp"

namespace fogmatch {

MsdaResult msda(const UserPreferences& prefs, const GlobalList& gl, const QuotaVector& quotas) {
  const std::size_t user_count = gl.size();
  const std::size_t fog_count = prefs.fog_count();
  if (prefs.user_count() != user_count) throw StructuralError("msda: global list and preferences disagree on user count");
  if (quotas.size() != fog_count) throw StructuralError("msda: quota vector and preferences disagree on fog count");
  if (quotas.total_min() > user_count || user_count > quotas.total_max()) {
    std::ostringstream os;
    os << "msda: no feasible matching, need sum q_min (" << quotas.total_min() << ") <= users (" << user_count
       << ") <= sum q_max (" << quotas.total_max() << ")";
    throw InfeasibleQuotaError(os.str());
  }

  MsdaResult result{Matching(user_count, fog_count), {}};
  std::vector<Quota> current(quotas.values().begin(), quotas.values().end());
  std::vector<UserId> remaining(gl.order().begin(), gl.order().end());
  // R^0 is the whole list.
  std::vector<bool> was_reserved(user_count, true);

  while (!remaining.empty()) {
    StageTrace trace;
    trace.stage = result.stages.size() + 1;
    if (trace.stage > user_count) throw InternalError("msda: stage budget exhausted");
    trace.quotas_before = current;

    std::size_t reserve = 0;
    for (const auto& q : current) reserve += q.min;
    reserve = std::min(reserve, remaining.size());
    trace.reserved.assign(remaining.end() - static_cast<std::ptrdiff_t>(reserve), remaining.end());

    std::vector<bool> is_reserved(user_count, false);
    for (auto u : trace.reserved) is_reserved[u.value] = true;
    for (auto u : remaining) {
      if (was_reserved[u.value] && !is_reserved[u.value]) trace.subgroup.push_back(u);
    }

    trace.capacities.resize(fog_count);
    if (!trace.subgroup.empty()) {
      for (std::size_t f = 0; f < fog_count; ++f) trace.capacities[f] = current[f].max;
    } else {
      trace.used_min_quotas = true;
      trace.subgroup = trace.reserved;
      for (std::size_t f = 0; f < fog_count; ++f) trace.capacities[f] = current[f].min;
    }

    const Matching stage = deferred_acceptance(trace.subgroup, prefs, gl, trace.capacities);
    trace.received = stage.occupancies();
    for (auto u : trace.subgroup) {
      if (auto f = stage.fog_of(u)) {
        result.matching.assign(u, *f);
        trace.matched.push_back(u);
      }
    }
    if (trace.matched.empty()) throw InternalError("msda: stage matched no user");

    for (std::size_t f = 0; f < fog_count; ++f) {
      const auto got = trace.received[f];
      if (got > current[f].max) throw InternalError("msda: fog received more users than its maximum quota");
      current[f].max -= got;
      current[f].min = current[f].min > got ? current[f].min - got : 0;
    }
    trace.quotas_after = current;

    std::erase_if(remaining, [&](UserId u) { return result.matching.fog_of(u).has_value(); });
    was_reserved = std::move(is_reserved);
    result.stages.push_back(std::move(trace));
  }
  return result;
}

}  // namespace fogmatch
