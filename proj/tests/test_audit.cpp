#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "fogmatch/audit.hpp"
#include "fogmatch/deferred_acceptance.hpp"
#include "fogmatch/oracle.hpp"
#include "test_support.hpp"

namespace fogmatch {
namespace {

bool contains(const std::vector<BlockingPair>& pairs, std::size_t u, std::size_t f) {
  return std::find(pairs.begin(), pairs.end(), BlockingPair{UserId{u}, FogId{f}}) != pairs.end();
}

TEST(BlockingPairs, NoneInDeferredAcceptanceOutput) {
  const testing::Counterexample ex;
  const auto da = deferred_acceptance(ex.prefs, ex.gl, ex.quotas.maxima());
  EXPECT_TRUE(find_blocking_pairs(da, ex.prefs, ex.gl, ex.quotas).empty());
}

TEST(BlockingPairs, SwapAgainstGlobalList) {
  // u3 seated at f1 and u1 at f3: u1 outranks u3 and prefers f1.
  const testing::Counterexample ex;
  Matching m(3, 3);
  m.assign(UserId{2}, FogId{0});
  m.assign(UserId{1}, FogId{1});
  m.assign(UserId{0}, FogId{2});
  const auto pairs = find_blocking_pairs(m, ex.prefs, ex.gl, ex.quotas);
  EXPECT_TRUE(contains(pairs, 0, 0));
}

TEST(BlockingPairs, EveryoneBlocksAnEmptyMatching) {
  const testing::Counterexample ex;
  const auto pairs = find_blocking_pairs(Matching(3, 3), ex.prefs, ex.gl, ex.quotas);
  for (std::size_t u = 0; u < 3; ++u) EXPECT_TRUE(contains(pairs, u, ex.prefs.order(UserId{u})[0].value));
  // With a free seat everywhere every pair blocks.
  EXPECT_EQ(pairs.size(), 9u);
  EXPECT_TRUE(std::is_sorted(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    return a.user != b.user ? a.user < b.user : a.fog < b.fog;
  }));
}

TEST(BlockingPairs, AgreesWithDefinitionOnRandomAssignments) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 300; ++t) {
    const std::size_t users = 1 + rng() % 7;
    const std::size_t fogs = 1 + rng() % 4;
    const auto inst = oracle::random_instance(rng, users, fogs, 3);
    oracle::Assignment a(users);
    for (auto& f : a) f = static_cast<int>(rng() % (fogs + 1)) - 1;
    const auto caps = inst.quotas.maxima();
    const auto pairs = find_blocking_pairs(oracle::to_matching(a, fogs), inst.prefs, inst.gl, inst.quotas);
    for (std::size_t u = 0; u < users; ++u) {
      for (std::size_t f = 0; f < fogs; ++f) {
        ASSERT_EQ(contains(pairs, u, f), oracle::blocks(a, u, f, inst.prefs, inst.gl, caps));
      }
    }
  }
}

TEST(Audit, FlagsMinimumBreachInDeferredAcceptance) {
  const testing::Counterexample ex;
  const auto da = deferred_acceptance(ex.prefs, ex.gl, ex.quotas.maxima());
  const auto r = audit(da, ex.quotas, ex.prefs, ex.gl);
  EXPECT_FALSE(r.green());
  EXPECT_FALSE(r.feasible);
  EXPECT_EQ(r.flagged_fogs(), std::vector<FogId>{FogId{2}});
  EXPECT_TRUE(r.fogs[2].below_min());
  EXPECT_EQ(r.fogs[2].occupancy, 0u);
  EXPECT_EQ(r.unmatched, 0u);
  EXPECT_EQ(r.blocking_pairs, 0u);
}

TEST(Audit, MsdaOutputIsGreen) {
  const testing::Counterexample ex;
  const auto out = msda(ex.prefs, ex.gl, ex.quotas);
  const auto r = audit(out, ex.quotas, ex.prefs, ex.gl);
  EXPECT_TRUE(r.green());
  EXPECT_TRUE(r.flagged_fogs().empty());
  // Against the original q_max the matching has blocking pairs (u2 wants f1,
  // which still has a free seat); the stage-wise count is what certifies it.
  EXPECT_GT(audit(out.matching, ex.quotas, ex.prefs, ex.gl).blocking_pairs, 0u);
}

TEST(Audit, EmptyScenarioIsGreen) {
  const UserPreferences prefs({}, 2);
  const GlobalList gl(std::vector<UserId>{});
  const QuotaVector q({{0, 1}, {0, 1}});
  EXPECT_TRUE(audit(Matching(0, 2), q, prefs, gl).green());
}

TEST(Audit, CountsUnmatchedAndInconsistentShapes) {
  const testing::Counterexample ex;
  Matching m(3, 3);
  m.assign(UserId{0}, FogId{0});
  const auto r = audit(m, QuotaVector({{0, 2}, {0, 2}, {0, 2}}), ex.prefs, ex.gl);
  EXPECT_EQ(r.unmatched, 2u);
  EXPECT_TRUE(r.feasible);
  EXPECT_FALSE(r.green());
  EXPECT_THROW(find_blocking_pairs(Matching(2, 3), ex.prefs, ex.gl, ex.quotas), StructuralError);
}

}  // namespace
}  // namespace fogmatch
