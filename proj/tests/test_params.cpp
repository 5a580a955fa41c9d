#include <gtest/gtest.h>

#include <cmath>

#include "banditstream/params.hpp"

using namespace banditstream;

namespace {
EpsBestParams theory(double eps, double delta = 0.1) { return EpsBestParams{eps, delta, ConstantMode::theory}; }
}  // namespace

TEST(EpsBestParams, Validation) {
  EXPECT_NO_THROW(theory(0.5).validate());
  EXPECT_THROW(theory(0.0).validate(), BanditError);
  EXPECT_THROW(theory(1.0).validate(), BanditError);
  EXPECT_THROW(theory(0.1, 1.0).validate(), BanditError);
  EpsBestParams p;
  p.level_growth = 1.0;
  EXPECT_THROW(p.validate(), BanditError);
}

TEST(ParamSet1, FirstRows) {
  const auto r1 = param_set_1(1, 0.2, 0.1);
  EXPECT_EQ(r1.r_l, 4u);
  EXPECT_EQ(r1.c_l, 16u);
  EXPECT_NEAR(r1.eps_l, 0.02, 1e-15);
  EXPECT_NEAR(r1.beta_l, 2500.0, 1e-9);
  EXPECT_EQ(r1.s_l, 286052u);

  const auto r2 = param_set_1(2, 0.2, 0.1);
  EXPECT_EQ(r2.r_l, 16u);
  EXPECT_EQ(r2.c_l, 32768u);
  EXPECT_NEAR(r2.eps_l, 0.01, 1e-15);

  const auto r3 = param_set_1(3, 0.2, 0.1);
  EXPECT_EQ(r3.r_l, 65536u);
  EXPECT_EQ(r3.c_l, kSaturated);
}

TEST(ParamSet1, TowerOverflow) {
  try {
    param_set_1(4, 0.2, 0.1);
    FAIL();
  } catch (const BanditError& e) {
    EXPECT_EQ(e.code(), Errc::overflow);
  }
}

TEST(ParamSet2, Schedule) {
  const auto ps = param_set_2(0.4, 0.1);
  EXPECT_EQ(ps.s_1(), 231u);
  EXPECT_EQ(ps.s_l(1), 231u);
  EXPECT_EQ(ps.s_l(2), 2 * ps.s_1());
  EXPECT_EQ(ps.s_l(3), 4 * ps.s_1());
  EXPECT_DOUBLE_EQ(ParamSet2::p_j(1), 1.0);
  EXPECT_NEAR(ParamSet2::p_j(3), 1.0 / (std::log(3.0) + 1.0), 1e-15);
  EXPECT_EQ(ps.tau_j(2), 738u);
  EXPECT_EQ(ps.tau_j(1), static_cast<std::uint64_t>(std::ceil(200.0 * std::log(10.0))));
}

TEST(ParamSet2, ReplacementLevel) {
  const auto ps = param_set_2(0.4, 0.1);
  // 2^l * 231 > tau_j
  for (std::uint64_t j : {1u, 2u, 10u, 1000u}) {
    const int l = ps.replacement_level(j);
    EXPECT_GT(std::exp2(l) * 231.0, static_cast<double>(ps.tau_j(j)));
    EXPECT_LE(std::exp2(l - 1) * 231.0, static_cast<double>(ps.tau_j(j)));
  }
}

TEST(ParamSet2, ExperimentModeUsesGrowth) {
  EpsBestParams p{0.1, 0.1, ConstantMode::experiment, 1.2};
  ParamSet2 ps(p);
  EXPECT_EQ(ps.s_1(), static_cast<std::uint64_t>(std::ceil(100.0 * std::log(10.0))));
  EXPECT_EQ(ps.s_l(2), static_cast<std::uint64_t>(std::ceil((1.44 - 1.2) * static_cast<double>(ps.s_1()))));
}

TEST(Counts, UniformExploration) {
  EXPECT_EQ(uniform_exploration_pulls(100, 100000), 226u);
  EXPECT_THROW(uniform_exploration_pulls(0, 10), BanditError);
}

TEST(Counts, NaiveElimination) {
  EXPECT_EQ(naive_elimination_pulls(10, theory(0.4)), 461u);
  EXPECT_EQ(naive_elimination_pulls(50, theory(0.1)), 9944u);
  EpsBestParams e{0.4, 0.1, ConstantMode::experiment};
  EXPECT_EQ(naive_elimination_pulls(10, e), static_cast<std::uint64_t>(std::ceil(6.25 * std::log(100.0))));
}

TEST(Counts, AggressivePromotion) {
  EXPECT_EQ(asp_levels(500), 5);
  EXPECT_EQ(asp_final_samples(500, theory(0.1)), 12800u);
  EXPECT_EQ(asp_level_samples(1, theory(0.2)), 286052u);
  EpsBestParams e{0.1, 0.1, ConstantMode::experiment, 1.2};
  EXPECT_EQ(asp_level_samples(1, e), 100u);
  EXPECT_EQ(asp_level_samples(2, e), 120u);
}

TEST(Counts, Buckets) {
  EXPECT_EQ(bucket_log_levels(256), 4);
  EXPECT_EQ(bucket_loglog_levels(5000), 2);
  EXPECT_EQ(bucket_level_samples(1, theory(0.2)), 53026u);
  EXPECT_EQ(bucket_top_samples(5000, 2, theory(0.1)), 4328u);
}

TEST(DefaultEpsilon, CubeRoot) {
  EXPECT_DOUBLE_EQ(default_epsilon(8, 8000), 0.1);
  EXPECT_DOUBLE_EQ(default_epsilon(8, 8000, EpsilonRule::probabilistic), 0.05);
}

TEST(Mode, Parse) {
  EXPECT_EQ(parse_mode("theory"), ConstantMode::theory);
  EXPECT_EQ(parse_mode("experiment"), ConstantMode::experiment);
  EXPECT_THROW(parse_mode("fast"), BanditError);
}
