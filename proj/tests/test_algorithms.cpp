#include <gtest/gtest.h>

#include <cmath>

#include "banditstream/algorithms/registry.hpp"
#include "banditstream/instances.hpp"

using namespace banditstream;

namespace {

EpsBestParams experiment(double eps) { return EpsBestParams{eps, 0.1, ConstantMode::experiment, 1.2}; }
EpsBestParams theory(double eps) { return EpsBestParams{eps, 0.1, ConstantMode::theory}; }

bool same_outcome(const PolicyOutcome& a, const PolicyOutcome& b) {
  return a.committed_index == b.committed_index && a.total_regret == b.total_regret &&
         a.explore_regret == b.explore_regret && a.explore_pulls == b.explore_pulls &&
         a.commit_pulls == b.commit_pulls && a.peak_retained == b.peak_retained && a.truncated == b.truncated;
}

}  // namespace

TEST(Registry, NamesRoundTrip) {
  for (AlgorithmId id : kAllAlgorithms) EXPECT_EQ(parse_algorithm(algorithm_name(id)), id);
  EXPECT_EQ(algorithm_name(AlgorithmId::asp_logstar), "asp-logstar");
  EXPECT_THROW(parse_algorithm("ucb"), BanditError);
}

TEST(Registry, MemoryBounds) {
  EXPECT_EQ(memory_bound(AlgorithmId::uniform_exploration, 500), 1u);
  EXPECT_EQ(memory_bound(AlgorithmId::naive_elimination, 500), 1u);
  EXPECT_EQ(memory_bound(AlgorithmId::jin_single_arm, 500), 1u);
  EXPECT_EQ(memory_bound(AlgorithmId::asp_logstar, 500), 5u);
  EXPECT_EQ(memory_bound(AlgorithmId::bucket_log, 256), 16u);
  EXPECT_EQ(memory_bound(AlgorithmId::bucket_loglog, 5000), 5u);
}

TEST(UniformExploration, DeterministicTwoArmExample) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    BanditEnvironment env(StreamInstance::from_means({1.0, 0.0}), 4, seed);
    UniformExploration policy(1);
    const auto out = explore_and_commit(env, policy);
    EXPECT_EQ(out.committed_index, 0u);
    EXPECT_DOUBLE_EQ(out.total_regret, 1.0);
    EXPECT_DOUBLE_EQ(out.explore_regret, 1.0);
    EXPECT_EQ(out.explore_pulls, 2u);
    EXPECT_EQ(out.commit_pulls, 2u);
  }
}

TEST(UniformExploration, IncumbentWinsTies) {
  BanditEnvironment env(StreamInstance::from_means({1.0, 1.0, 1.0}), 100, 0);
  UniformExploration policy(5);
  EXPECT_EQ(explore_and_commit(env, policy).committed_index, 0u);
}

TEST(UniformExploration, EmptySlotAcceptsZeroMean) {
  BanditEnvironment env(StreamInstance::from_means({0.0, 0.0}), 10, 0);
  UniformExploration policy(2);
  const auto out = explore_and_commit(env, policy);
  EXPECT_EQ(out.committed_index, 0u);
  EXPECT_EQ(out.explore_pulls + out.commit_pulls, 10u);
}

TEST(UniformExploration, TruncationCommitsIncumbent) {
  BanditEnvironment env(StreamInstance::from_means({0.9, 0.1, 0.2, 0.3, 0.4}), 25, 0);
  UniformExploration policy(10);
  const auto out = explore_and_commit(env, policy);
  EXPECT_TRUE(out.truncated);
  EXPECT_EQ(out.explore_pulls, 25u);
  EXPECT_EQ(out.commit_pulls, 0u);
}

TEST(UniformExploration, TruncationOnFirstArmCommitsIt) {
  BanditEnvironment env(StreamInstance::from_means({0.6, 0.1}), 5, 0);
  UniformExploration policy(10);
  const auto out = explore_and_commit(env, policy);
  EXPECT_TRUE(out.truncated);
  EXPECT_EQ(out.committed_index, 0u);
  EXPECT_EQ(out.explore_pulls, 5u);
}

TEST(NaiveElimination, PullsEveryArmP) {
  const auto inst = gen_uniform(30, 1);
  const EpsBestParams p = theory(0.4);
  const std::uint64_t per_arm = naive_elimination_pulls(30, p);
  BanditEnvironment env(inst, 30 * per_arm + 1000, 1);
  NaiveElimination policy(p);
  const auto out = explore_and_commit(env, policy);
  EXPECT_FALSE(out.truncated);
  EXPECT_EQ(out.explore_pulls, 30 * per_arm);
  EXPECT_EQ(out.commit_pulls, 1000u);
  EXPECT_LE(out.peak_retained, 1u);
}

TEST(NaiveElimination, FindsTrapArm) {
  int hits = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto inst = gen_trap(20, 0.3, s);
    BanditEnvironment env(inst, 1000000, s);
    NaiveElimination policy(theory(0.1));
    hits += policy.select(env).arm->index == inst.best_index();
  }
  EXPECT_GE(hits, 176);  // 88% of 200
}

TEST(AggressivePromotion, LevelsAndFinalRound) {
  const auto inst = gen_uniform(500, 3);
  BanditEnvironment env(inst, 500000, 3);
  AggressiveSelectivePromotion asp(experiment(0.1));
  const auto out = explore_and_commit(env, asp);
  EXPECT_EQ(asp.counters().size(), 5u);
  EXPECT_LE(out.peak_retained, 5u);
  EXPECT_FALSE(out.truncated);
  EXPECT_EQ(out.explore_pulls + out.commit_pulls, 500000u);
}

TEST(AggressivePromotion, PullCountFixedUpToFinalRound) {
  // Level pulls are fixed by K. Only the number of distinct arms sampled in
  // the final round depends on the rewards.
  auto pulls = [](std::uint64_t seed) {
    BanditEnvironment env(gen_uniform(300, seed), 100000000, seed);
    AggressiveSelectivePromotion asp(experiment(0.1));
    return static_cast<std::int64_t>(explore_and_commit(env, asp).explore_pulls);
  };
  const auto final_round = static_cast<std::int64_t>(asp_final_samples(300, experiment(0.1)));
  const std::int64_t base = pulls(1);
  for (std::uint64_t s : {2u, 3u, 9u, 20u}) {
    const std::int64_t diff = pulls(s) - base;
    EXPECT_EQ(diff % final_round, 0) << "seed " << s;
    EXPECT_LE(std::abs(diff), (asp_levels(300) - 1) * final_round);
  }
}

TEST(AggressivePromotion, TiesReplace) {
  BanditEnvironment env(StreamInstance::from_means({1.0, 1.0}), 100000, 0);
  AggressiveSelectivePromotion asp(experiment(0.1));
  EXPECT_EQ(asp.select(env).arm->index, 1u);
}

TEST(AggressivePromotion, TruncationReturnsStoredArm) {
  BanditEnvironment env(gen_uniform(50, 1), 1000, 1);
  AggressiveSelectivePromotion asp(experiment(0.1));
  const auto out = explore_and_commit(env, asp);
  EXPECT_TRUE(out.truncated);
  EXPECT_EQ(out.explore_pulls, 1000u);
}

TEST(BucketLogK, MemoryAndBudget) {
  for (std::size_t k : {1u, 3u, 4u, 17u, 256u, 300u}) {
    BanditEnvironment env(gen_uniform(k, k), 10000000, k);
    BucketLogK alg(experiment(0.1));
    const auto out = explore_and_commit(env, alg);
    EXPECT_LE(out.peak_retained, BucketLogK::memory_bound(k)) << "K=" << k;
    EXPECT_EQ(out.explore_pulls + out.commit_pulls, 10000000u);
    EXPECT_FALSE(out.truncated);
  }
}

TEST(BucketLogK, SingleArmSkipsSampling) {
  BanditEnvironment env(StreamInstance::from_means({0.4}), 100, 0);
  BucketLogK alg(experiment(0.1));
  const auto out = explore_and_commit(env, alg);
  EXPECT_EQ(out.explore_pulls, 0u);
  EXPECT_EQ(out.commit_pulls, 100u);
}

TEST(BucketLogLogK, MemoryBudgetAndTop) {
  for (std::size_t k : {2u, 5u, 64u, 500u}) {
    BanditEnvironment env(gen_uniform(k, k), 10000000, k);
    BucketLogLogK alg(experiment(0.1));
    const auto out = explore_and_commit(env, alg);
    EXPECT_LE(out.peak_retained, BucketLogLogK::memory_bound(k)) << "K=" << k;
    EXPECT_EQ(out.explore_pulls + out.commit_pulls, 10000000u);
    ASSERT_TRUE(alg.top().arm());
    EXPECT_EQ(alg.top().arm()->index, out.committed_index);
  }
}

TEST(JinSingleArm, FirstArmStoredFromFirstBatch) {
  const EpsBestParams p = theory(0.4);
  BanditEnvironment env(StreamInstance::from_means({0.7}), 10000, 0);
  JinSingleArm jin(p);
  const auto out = explore_and_commit(env, jin);
  EXPECT_EQ(out.committed_index, 0u);
  EXPECT_EQ(out.explore_pulls, jin.schedule().s_1());
  EXPECT_EQ(out.peak_retained, 1u);
}

TEST(JinSingleArm, WeakChallengerDroppedAtFirstLevel) {
  const EpsBestParams p = theory(0.4);
  BanditEnvironment env(StreamInstance::from_means({1.0, 0.0}), 10000, 0);
  JinSingleArm jin(p);
  const auto out = explore_and_commit(env, jin);
  EXPECT_EQ(out.committed_index, 0u);
  EXPECT_EQ(out.explore_pulls, 2 * jin.schedule().s_1());
  EXPECT_EQ(jin.replacements(), 0u);
}

TEST(JinSingleArm, StrongChallengerReplacesAtScheduledLevel) {
  const EpsBestParams p = theory(0.4);
  BanditEnvironment env(StreamInstance::from_means({0.0, 1.0}), 100000, 0);
  JinSingleArm jin(p);
  const auto out = explore_and_commit(env, jin);
  EXPECT_EQ(out.committed_index, 1u);
  EXPECT_EQ(jin.replacements(), 1u);
  const auto& ps = jin.schedule();
  std::uint64_t challenger = 0;
  for (int l = 1; l <= ps.replacement_level(1); ++l) challenger += ps.s_l(l);
  EXPECT_EQ(out.explore_pulls, ps.s_1() + challenger);
  EXPECT_LE(out.peak_retained, 1u);
}

TEST(ExploreAndCommit, AccountingIdentities) {
  const auto inst = gen_standout(200, 4, InstanceSpecConfig{});
  const std::uint64_t T = 200000;
  for (AlgorithmId id : kAllAlgorithms) {
    BanditEnvironment env(inst, T, 4);
    const auto out = run_explore_and_commit(id, env, experiment(default_epsilon(200, T)));
    EXPECT_EQ(out.explore_pulls + out.commit_pulls, T) << algorithm_name(id);
    EXPECT_NEAR(out.explore_regret + out.commit_regret, out.total_regret, 1e-9);
    EXPECT_NEAR(out.commit_regret, static_cast<double>(out.commit_pulls) * out.gap, 1e-6 * T);
    EXPECT_LE(out.peak_retained, memory_bound(id, 200)) << algorithm_name(id);
  }
}

TEST(ExploreAndCommit, NeedsFreshEnvironment) {
  BanditEnvironment env(StreamInstance::from_means({0.5, 0.6}), 100, 0);
  env.next_arm();
  UniformExploration policy(1);
  EXPECT_THROW(explore_and_commit(env, policy), BanditError);
}

TEST(ExploreAndCommit, DeterministicOutcomes) {
  const auto inst = gen_uniform(100, 8);
  for (AlgorithmId id : kAllAlgorithms) {
    BanditEnvironment a(inst, 100000, 8), b(inst, 100000, 8);
    const auto p = experiment(0.1);
    EXPECT_TRUE(same_outcome(run_explore_and_commit(id, a, p), run_explore_and_commit(id, b, p)))
        << algorithm_name(id);
  }
}
