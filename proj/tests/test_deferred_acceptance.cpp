#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "fogmatch/audit.hpp"
#include "fogmatch/deferred_acceptance.hpp"
#include "fogmatch/oracle.hpp"
#include "test_support.hpp"

namespace fogmatch {
namespace {

std::vector<UserId> seated(const Matching& m, std::size_t f) {
  auto s = m.users_of(FogId{f});
  return {s.begin(), s.end()};
}

TEST(DeferredAcceptance, CounterexampleFillsFirstFog) {
  const testing::Counterexample ex;
  const std::vector<std::size_t> caps{2, 2, 2};
  const auto m = deferred_acceptance(ex.prefs, ex.gl, caps);
  EXPECT_EQ(seated(m, 0), (std::vector<UserId>{UserId{0}, UserId{1}}));
  EXPECT_EQ(seated(m, 1), (std::vector<UserId>{UserId{2}}));
  EXPECT_TRUE(seated(m, 2).empty());
}

TEST(DeferredAcceptance, NoUsers) {
  const UserPreferences prefs({}, 3);
  const GlobalList gl(std::vector<UserId>{});
  const std::vector<std::size_t> caps{1, 1, 1};
  const auto m = deferred_acceptance(prefs, gl, caps);
  EXPECT_EQ(m.user_count(), 0u);
  EXPECT_EQ(m.fog_count(), 3u);
}

TEST(DeferredAcceptance, OverflowLeavesWorstRankedUnmatched) {
  const auto prefs = testing::uniform_prefs(3, 2);
  const GlobalList gl({UserId{2}, UserId{0}, UserId{1}});
  const std::vector<std::size_t> caps{1, 1};
  const auto m = deferred_acceptance(prefs, gl, caps);
  EXPECT_EQ(m.fog_of(UserId{2}), FogId{0});
  EXPECT_EQ(m.fog_of(UserId{0}), FogId{1});
  EXPECT_FALSE(m.fog_of(UserId{1}).has_value());
}

TEST(DeferredAcceptance, SubsetLeavesOthersUnmatched) {
  const testing::Counterexample ex;
  const std::vector<std::size_t> caps{1, 1, 1};
  const std::vector<UserId> subset{UserId{2}, UserId{1}};
  const auto m = deferred_acceptance(subset, ex.prefs, ex.gl, caps);
  EXPECT_FALSE(m.fog_of(UserId{0}).has_value());
  EXPECT_EQ(m.fog_of(UserId{1}), FogId{0});
  EXPECT_EQ(m.fog_of(UserId{2}), FogId{1});
}

TEST(DeferredAcceptance, RejectsMalformedInput) {
  const testing::Counterexample ex;
  const std::vector<std::size_t> two{1, 1};
  EXPECT_THROW(deferred_acceptance(ex.prefs, ex.gl, two), StructuralError);
  const std::vector<std::size_t> caps{1, 1, 1};
  const std::vector<UserId> dup{UserId{0}, UserId{0}};
  EXPECT_THROW(deferred_acceptance(dup, ex.prefs, ex.gl, caps), StructuralError);
}

// Random 4-user / 3-fog instances: the output is exactly the user-optimal
// element of the brute-force set of stable assignments.
TEST(DeferredAcceptance, MatchesBruteForceOnSmallInstances) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 100; ++t) {
    const auto inst = oracle::random_instance(rng, 4, 3, 3);
    const auto caps = inst.quotas.maxima();
    const auto m = deferred_acceptance(inst.prefs, inst.gl, caps);
    const auto stable = oracle::stable_assignments(inst.prefs, inst.gl, caps);
    ASSERT_FALSE(stable.empty());
    const auto a = oracle::to_assignment(m);
    ASSERT_NE(std::find(stable.begin(), stable.end(), a), stable.end());
    ASSERT_EQ(oracle::user_optimal(stable, inst.prefs), a);
  }
}

// Proposal order does not change the outcome.
TEST(DeferredAcceptance, IndependentOfProposalOrder) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 100; ++t) {
    const std::size_t users = 1 + rng() % 40;
    const auto inst = oracle::random_instance(rng, users, 1 + rng() % 6, users);
    const auto caps = inst.quotas.maxima();
    std::vector<UserId> shuffled(inst.gl.order().begin(), inst.gl.order().end());
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    ASSERT_EQ(deferred_acceptance(shuffled, inst.prefs, inst.gl, caps),
              deferred_acceptance(inst.prefs, inst.gl, caps));
  }
}

TEST(DeferredAcceptance, NeverBlockedOnLargerInstances) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const std::size_t users = 1 + rng() % 50;
    const std::size_t fogs = 1 + rng() % 8;
    const auto inst = oracle::random_instance(rng, users, fogs, users / fogs + 2);
    const auto m = deferred_acceptance(inst.prefs, inst.gl, inst.quotas.maxima());
    ASSERT_TRUE(m.consistent());
    ASSERT_TRUE(find_blocking_pairs(m, inst.prefs, inst.gl, inst.quotas).empty());
    for (std::size_t f = 0; f < fogs; ++f) ASSERT_LE(m.occupancy(FogId{f}), inst.quotas[FogId{f}].max);
  }
}

}  // namespace
}  // namespace fogmatch
