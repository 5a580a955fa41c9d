#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "banditstream/environment.hpp"
#include "banditstream/stats.hpp"

using namespace banditstream;

namespace {
StreamInstance three() { return StreamInstance::from_means({0.2, 0.9, 0.5}); }
}  // namespace

TEST(Instance, RejectsBadMeans) {
  EXPECT_THROW(StreamInstance::from_means({}), BanditError);
  EXPECT_THROW(StreamInstance::from_means({0.5, 1.2}), BanditError);
  EXPECT_THROW(StreamInstance::from_means({-0.1}), BanditError);
}

TEST(Instance, BestIndexPrefersFirstOnTies) {
  auto inst = StreamInstance::from_means({0.3, 0.7, 0.7});
  EXPECT_EQ(inst.best_index(), 1u);
  EXPECT_DOUBLE_EQ(inst.best_mean(), 0.7);
}

TEST(Environment, NextArmWalksTheStreamOnce) {
  BanditEnvironment env(three(), 100, 1);
  for (std::size_t i = 0; i < 3; ++i) {
    auto h = env.next_arm();
    ASSERT_TRUE(h);
    EXPECT_EQ(h->index, i);
    EXPECT_EQ(env.cursor(), i + 1);
  }
  EXPECT_FALSE(env.next_arm());
  EXPECT_FALSE(env.next_arm());
}

TEST(Environment, PullChargesRegret) {
  BanditEnvironment env(StreamInstance::from_means({1.0, 0.0}), 10, 3);
  auto a = *env.next_arm();
  EXPECT_EQ(env.pull(a), 1);
  EXPECT_DOUBLE_EQ(env.regret(), 0.0);
  auto b = *env.next_arm();
  EXPECT_EQ(env.pull(b), 0);
  EXPECT_DOUBLE_EQ(env.regret(), 1.0);
  EXPECT_EQ(env.pulls_used(), 2u);
}

TEST(Environment, ZeroMeanArmAgainstBestNinety) {
  BanditEnvironment env(StreamInstance::from_means({0.0, 0.9}), 10, 3);
  auto a = *env.next_arm();
  EXPECT_EQ(env.pull(a), 0);
  EXPECT_NEAR(env.regret(), 0.9, 1e-15);
}

TEST(Environment, BudgetExhausted) {
  BanditEnvironment env(three(), 2, 0);
  auto a = *env.next_arm();
  env.pull(a);
  env.pull(a);
  try {
    env.pull(a);
    FAIL() << "expected budget error";
  } catch (const BanditError& e) {
    EXPECT_EQ(e.code(), Errc::budget_exhausted);
  }
}

TEST(Environment, BatchPullExactPathZeroMean) {
  BanditEnvironment env(StreamInstance::from_means({0.0, 0.6}), 1000, 0);
  auto a = *env.next_arm();
  const BatchResult r = env.batch_pull(a, 100);
  EXPECT_EQ(r.successes, 0u);
  EXPECT_EQ(r.pulls, 100u);
  EXPECT_DOUBLE_EQ(r.mean(), 0.0);
  EXPECT_NEAR(env.regret(), 60.0, 1e-9);
}

TEST(Environment, BatchPullDegenerateVarianceClamps) {
  const std::uint64_t n = 100001;
  BanditEnvironment env(StreamInstance::from_means({1.0}), n, 0);
  auto a = *env.next_arm();
  EXPECT_DOUBLE_EQ(env.batch_pull(a, n).mean(), 1.0);
  EXPECT_EQ(env.remaining(), 0u);
}

TEST(Environment, BatchPullZeroIsDomainError) {
  BanditEnvironment env(three(), 10, 0);
  auto a = *env.next_arm();
  EXPECT_THROW(env.batch_pull(a, 0), BanditError);
}

TEST(Environment, BatchPullTruncatesAndCharges) {
  BanditEnvironment env(three(), 50, 0);
  auto a = *env.next_arm();
  env.batch_pull(a, 30);
  try {
    env.batch_pull(a, 30);
    FAIL() << "expected truncation";
  } catch (const BudgetTruncated& t) {
    EXPECT_EQ(t.requested(), 30u);
    EXPECT_EQ(t.served(), 20u);
    EXPECT_EQ(t.code(), Errc::budget_truncated);
  }
  EXPECT_EQ(env.pulls_used(), 50u);
}

TEST(Environment, BatchAccountingMatchesSinglePulls) {
  BanditEnvironment a(three(), 1000, 9);
  BanditEnvironment b(three(), 1000, 9);
  auto ha = *a.next_arm();
  auto hb = *b.next_arm();
  const auto batch = a.batch_pull(ha, 200);
  std::uint64_t s = 0;
  for (int i = 0; i < 200; ++i) s += static_cast<std::uint64_t>(b.pull(hb));
  EXPECT_EQ(batch.successes, s);
  EXPECT_EQ(a.pulls_used(), b.pulls_used());
  EXPECT_NEAR(a.regret(), b.regret(), 1e-9);
}

TEST(Environment, CltForGaussianPath) {
  const std::uint64_t n = 1000000;
  std::vector<double> means;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    BanditEnvironment env(StreamInstance::from_means({0.5}), n, s);
    means.push_back(env.batch_pull(*env.next_arm(), n).mean());
  }
  EXPECT_NEAR(mean_of(means), 0.5, 3.0 * 0.5 / std::sqrt(static_cast<double>(n) * 1000.0));
}

TEST(Environment, ApproximationMatchesExactPath) {
  EnvironmentOptions opts;
  const std::uint64_t n = 2 * opts.approx_threshold;
  const int reps = 10000;
  for (int k = 1; k <= 9; ++k) {
    const double mu = k / 10.0;
    std::vector<double> approx;
    approx.reserve(reps);
    for (int s = 0; s < reps; ++s) {
      BanditEnvironment env(StreamInstance::from_means({mu}), n, static_cast<std::uint64_t>(s), opts);
      approx.push_back(env.batch_pull(*env.next_arm(), n).mean());
    }
    // The exact path is unbiased with standard error sqrt(mu(1-mu)/n)/sqrt(reps).
    const double se = std::sqrt(mu * (1 - mu) / static_cast<double>(n)) / std::sqrt(static_cast<double>(reps));
    EXPECT_NEAR(mean_of(approx), mu, 3.0 * se) << "mu=" << mu;
    EXPECT_NEAR(stddev_of(approx), std::sqrt(mu * (1 - mu) / static_cast<double>(n)),
                0.05 * std::sqrt(mu * (1 - mu) / static_cast<double>(n)));
  }
}

TEST(Environment, RetainDropAndStaleHandles) {
  BanditEnvironment env(StreamInstance::from_means({0.1, 0.2, 0.3, 0.4}), 100, 0);
  std::vector<ArmHandle> kept;
  for (int i = 0; i < 3; ++i) {
    auto h = *env.next_arm();
    env.retain(h);
    env.retain(h);  // idempotent
    kept.push_back(h);
  }
  EXPECT_EQ(env.retained_count(), 3u);
  EXPECT_EQ(env.peak_retained(), 3u);
  env.drop(kept[1]);
  EXPECT_EQ(env.retained_count(), 2u);
  EXPECT_EQ(env.peak_retained(), 3u);
  try {
    env.pull(kept[1]);
    FAIL() << "pull on a dropped arm";
  } catch (const BanditError& e) {
    EXPECT_EQ(e.code(), Errc::stale_handle);
  }
  EXPECT_THROW(env.retain(kept[1]), BanditError);
  EXPECT_NO_THROW(env.pull(kept[0]));
}

TEST(Environment, BufferArmIsLostOnAdvance) {
  BanditEnvironment env(three(), 100, 0);
  auto a = *env.next_arm();
  EXPECT_EQ(env.peak_retained(), 0u);
  env.pull(a);
  env.next_arm();
  EXPECT_FALSE(env.accessible(a));
  EXPECT_THROW(env.pull(a), BanditError);
  EXPECT_THROW(env.retain(a), BanditError);
}

TEST(Environment, UnseenArmIsNotAccessible) {
  BanditEnvironment env(three(), 100, 0);
  EXPECT_THROW(env.pull(ArmHandle{2}), BanditError);
  EXPECT_THROW(env.pull(ArmHandle{17}), BanditError);
}

TEST(Environment, ConservationFromPullLog) {
  BanditEnvironment env(StreamInstance::from_means({0.3, 0.8, 0.55}), 500, 4, EnvironmentOptions{100000, true});
  auto a = *env.next_arm();
  env.retain(a);
  env.batch_pull(a, 40);
  auto b = *env.next_arm();
  env.pull(b);
  env.batch_pull(b, 7);
  auto c = *env.next_arm();
  env.batch_pull(c, 100);
  env.batch_pull(a, 3);
  double replay = 0.0;
  std::uint64_t pulls = 0;
  for (const auto& e : env.pull_log()) {
    replay += static_cast<double>(e.count) * (env.best_mean() - e.arm_mean);
    pulls += e.count;
  }
  EXPECT_NEAR(replay, env.regret(), 1e-9);
  EXPECT_EQ(pulls, env.pulls_used());
  EXPECT_TRUE(env.pull_log().back().was_retained);
}

TEST(Environment, DeterministicPerSeed) {
  auto run = [](std::uint64_t seed) {
    BanditEnvironment env(three(), 10000, seed);
    std::vector<std::uint64_t> sums;
    while (auto h = env.next_arm()) sums.push_back(env.batch_pull(*h, 500).successes);
    return sums;
  };
  EXPECT_EQ(run(5), run(5));
  EXPECT_NE(run(5), run(6));
}

TEST(Environment, PolicyRngDoesNotPerturbRewards) {
  BanditEnvironment a(three(), 1000, 2);
  BanditEnvironment b(three(), 1000, 2);
  for (int i = 0; i < 50; ++i) b.policy_rng()();
  auto ha = *a.next_arm();
  auto hb = *b.next_arm();
  EXPECT_EQ(a.batch_pull(ha, 300).successes, b.batch_pull(hb, 300).successes);
}
