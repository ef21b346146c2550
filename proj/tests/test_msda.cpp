#include <random>

#include <gtest/gtest.h>

#include "fogmatch/audit.hpp"
#include "fogmatch/deferred_acceptance.hpp"
#include "fogmatch/msda.hpp"
#include "fogmatch/oracle.hpp"
#include "test_support.hpp"

namespace fogmatch {
namespace {

TEST(Msda, CounterexampleGivesOneUserPerFog) {
  const testing::Counterexample ex;
  const auto out = msda(ex.prefs, ex.gl, ex.quotas);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(out.matching.fog_of(UserId{i}), FogId{i});

  // Stage 1 reserves everyone (sum q_min = 3), so the previously reserved set
  // minus the new one is empty and DA runs with the minimum quotas.
  ASSERT_EQ(out.stages.size(), 1u);
  const auto& s = out.stages[0];
  EXPECT_TRUE(s.used_min_quotas);
  EXPECT_EQ(s.reserved.size(), 3u);
  EXPECT_EQ(s.capacities, (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(s.quotas_after, (std::vector<Quota>{{0, 1}, {0, 1}, {0, 1}}));

  // Plain DA on the same instance breaks f3's minimum.
  const auto da = deferred_acceptance(ex.prefs, ex.gl, ex.quotas.maxima());
  EXPECT_FALSE(matching_is_feasible(da, ex.quotas));
  EXPECT_TRUE(matching_is_feasible(out.matching, ex.quotas));
}

// The exhaustive search over 3^3 assignments finds exactly one feasible
// assignment without justified envy, and msda returns it.
TEST(Msda, CounterexampleIsTheOnlyFairFeasibleAssignment) {
  const testing::Counterexample ex;
  const auto fair = oracle::fair_feasible_assignments(ex.prefs, ex.gl, ex.quotas);
  ASSERT_EQ(fair.size(), 1u);
  EXPECT_EQ(fair[0], oracle::to_assignment(msda(ex.prefs, ex.gl, ex.quotas).matching));
}

TEST(Msda, NoLowerQuotasIsPlainDeferredAcceptance) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const std::size_t users = 1 + rng() % 50;
    const std::size_t fogs = 1 + rng() % 8;
    auto inst = oracle::random_instance(rng, users, fogs, 2 * users / fogs + 1);
    const auto upper = QuotaVector::upper_only(inst.quotas.maxima());
    if (upper.total_max() < users) continue;
    const auto out = msda(inst.prefs, inst.gl, upper);
    ASSERT_EQ(out.matching, deferred_acceptance(inst.prefs, inst.gl, upper.maxima()));
    ASSERT_EQ(out.stages.size(), 1u);
    ASSERT_FALSE(out.stages[0].used_min_quotas);
  }
}

TEST(Msda, TightUnitQuotasGiveAPerfectMatching) {
  std::mt19937_64 rng(4);
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto inst = oracle::random_instance(rng, n, n, 1);
    const QuotaVector unit(std::vector<Quota>(n, Quota{1, 1}));
    const auto out = msda(inst.prefs, inst.gl, unit);
    for (std::size_t f = 0; f < n; ++f) ASSERT_EQ(out.matching.occupancy(FogId{f}), 1u);
    ASSERT_TRUE(audit(out, unit, inst.prefs, inst.gl).green());
  }
}

TEST(Msda, InfeasibleWindowIsRejected) {
  const auto prefs = testing::uniform_prefs(3, 2);
  const auto gl = testing::identity_gl(3);
  EXPECT_THROW(msda(prefs, gl, QuotaVector({{2, 3}, {2, 3}})), InfeasibleQuotaError);
  EXPECT_THROW(msda(prefs, gl, QuotaVector({{0, 1}, {0, 1}})), InfeasibleQuotaError);
  EXPECT_THROW(msda(prefs, gl, QuotaVector({{0, 3}})), StructuralError);
}

TEST(Msda, EmptyUserSet) {
  const UserPreferences prefs({}, 2);
  const GlobalList gl(std::vector<UserId>{});
  const auto out = msda(prefs, gl, QuotaVector({{0, 1}, {0, 0}}));
  EXPECT_TRUE(out.stages.empty());
  EXPECT_THROW(msda(prefs, gl, QuotaVector({{1, 1}, {0, 0}})), InfeasibleQuotaError);
}

// Every instance inside the quota window: all users matched, every quota met,
// stages strictly consume users and the bookkeeping adds up.
TEST(Msda, FeasibleAndWellAccountedOnRandomInstances) {
  std::mt19937_64 rng(123);
  for (int t = 0; t < 300; ++t) {
    const std::size_t users = 1 + rng() % 50;
    const std::size_t fogs = 1 + rng() % 8;
    const auto inst = oracle::random_feasible_instance(rng, users, fogs);
    const auto out = msda(inst.prefs, inst.gl, inst.quotas);

    ASSERT_EQ(out.matching.unmatched_count(), 0u);
    ASSERT_TRUE(matching_is_feasible(out.matching, inst.quotas));
    ASSERT_TRUE(out.matching.consistent());
    ASSERT_LE(out.stages.size(), users);

    std::size_t received_total = 0;
    std::size_t remaining = users;
    for (const auto& s : out.stages) {
      ASSERT_FALSE(s.matched.empty());
      std::size_t reserve = 0;
      for (const auto& q : s.quotas_before) reserve += q.min;
      ASSERT_EQ(s.reserved.size(), std::min(reserve, remaining));
      for (std::size_t f = 0; f < fogs; ++f) {
        ASSERT_EQ(s.quotas_after[f].max, s.quotas_before[f].max - s.received[f]);
        const auto min_before = s.quotas_before[f].min;
        ASSERT_EQ(s.quotas_after[f].min, min_before > s.received[f] ? min_before - s.received[f] : 0);
        received_total += s.received[f];
      }
      remaining -= s.matched.size();
    }
    ASSERT_EQ(received_total, users);
    ASSERT_EQ(remaining, 0u);

    const auto report = audit(out, inst.quotas, inst.prefs, inst.gl);
    ASSERT_TRUE(report.green()) << "blocking pairs " << report.blocking_pairs;

    // Determinism.
    const auto again = msda(inst.prefs, inst.gl, inst.quotas);
    ASSERT_EQ(again.matching, out.matching);
    ASSERT_EQ(again.stages.size(), out.stages.size());
  }
}

// A case with a max-quota stage followed by reserved stages.
TEST(Msda, StagesPlaceTopUsersFirst) {
  // 4 users, 2 fogs, q_min = (1, 1), q_max = (3, 3), all prefer f0.
  const auto prefs = testing::uniform_prefs(4, 2);
  const auto gl = testing::identity_gl(4);
  const QuotaVector q({{1, 3}, {1, 3}});
  const auto out = msda(prefs, gl, q);

  ASSERT_EQ(out.stages.size(), 3u);
  // Stage 1: reserve u2, u3; DA on u0, u1 under max quotas, both to f0.
  EXPECT_FALSE(out.stages[0].used_min_quotas);
  EXPECT_EQ(out.stages[0].subgroup, (std::vector<UserId>{UserId{0}, UserId{1}}));
  EXPECT_EQ(out.stages[0].reserved, (std::vector<UserId>{UserId{2}, UserId{3}}));
  EXPECT_EQ(out.stages[0].quotas_after, (std::vector<Quota>{{0, 1}, {1, 3}}));
  // Stage 2: reserve u3 for f1; u2 takes f0's last seat.
  EXPECT_EQ(out.stages[1].subgroup, (std::vector<UserId>{UserId{2}}));
  EXPECT_EQ(out.matching.fog_of(UserId{2}), FogId{0});
  // Stage 3: u3 alone, reserved, fills f1's minimum.
  EXPECT_TRUE(out.stages[2].used_min_quotas);
  EXPECT_EQ(out.matching.fog_of(UserId{3}), FogId{1});
  EXPECT_TRUE(matching_is_feasible(out.matching, q));
}

}  // namespace
}  // namespace fogmatch
