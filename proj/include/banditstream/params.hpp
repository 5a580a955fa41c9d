#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "banditstream/errors.hpp"
#include "banditstream/stats.hpp"

namespace banditstream {

/// theory: the exact constants of the analysed parameter sets.
/// experiment: unit leading constants, the same epsilon at every level, and a
/// per-level sample multiplier of `level_growth`.
enum class ConstantMode { theory, experiment };

inline const char* to_string(ConstantMode mode) {
  return mode == ConstantMode::theory ? "theory" : "experiment";
}

inline ConstantMode parse_mode(const std::string& s) {
  if (s == "theory") return ConstantMode::theory;
  if (s == "experiment") return ConstantMode::experiment;
  fail(Errc::config, "unknown mode '" + s + "' (expected theory|experiment)");
}

struct EpsBestParams {
  double epsilon = 0.1;
  double delta = 0.1;
  ConstantMode mode = ConstantMode::theory;
  double level_growth = 1.2;

  void validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) fail(Errc::domain, "epsilon must lie in (0,1)");
    if (!(delta > 0.0 && delta < 1.0)) fail(Errc::domain, "delta must lie in (0,1)");
    if (!(level_growth > 1.0)) fail(Errc::domain, "level_growth must exceed 1");
  }

  double inv_eps_sq() const { return 1.0 / (epsilon * epsilon); }

  /// Experiment-mode samples at a 1-based level: ceil(growth^(level-1) / eps^2).
  std::uint64_t experiment_level_samples(int level) const {
    return ceil_count(inv_eps_sq() * std::pow(level_growth, level - 1));
  }
};

// ---------------------------------------------------------------------------
// Tower schedule used by aggressive selective promotion.

struct ParamSet1Row {
  int level = 1;
  double eps_l = 0.0;
  std::uint64_t r_l = 0;
  double beta_l = 0.0;
  std::uint64_t s_l = 0;
  std::uint64_t c_l = 0;  // saturates at uint64 max once 2^r_l no longer fits
};

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

/// r_1 = 4, r_{l+1} = 2^{r_l}. r_4 = 2^65536 does not fit in 64 bits.
inline std::uint64_t tower_r(int level) {
  if (level < 1) fail(Errc::domain, "levels start at 1");
  std::uint64_t r = 4;
  for (int l = 1; l < level; ++l) {
    if (r >= 64) fail(Errc::overflow, "r at level " + std::to_string(level) + " overflows 64 bits");
    r = std::uint64_t{1} << r;
  }
  return r;
}

inline ParamSet1Row param_set_1(int level, double epsilon, double delta) {
  EpsBestParams{epsilon, delta}.validate();
  ParamSet1Row row;
  row.level = level;
  row.r_l = tower_r(level);
  row.eps_l = epsilon / (10.0 * std::exp2(level - 1));
  row.beta_l = 1.0 / (row.eps_l * row.eps_l);
  row.s_l = ceil_count(8.0 * row.beta_l * (std::log(1.0 / delta) + 3.0 * static_cast<double>(row.r_l)));
  // c_1 = 2^r_1; c_l = 2^r_l / 2^(l-1) for l >= 2.
  if (row.r_l >= 64) {
    row.c_l = kSaturated;
  } else {
    const std::uint64_t pow_r = std::uint64_t{1} << row.r_l;
    row.c_l = level == 1 ? pow_r : pow_r >> (level - 1);
  }
  return row;
}

// ---------------------------------------------------------------------------
// Single-arm schedule (epochs, doubling levels).

class ParamSet2 {
 public:
  explicit ParamSet2(const EpsBestParams& params) : params_(params) {
    params_.validate();
    const bool theory = params_.mode == ConstantMode::theory;
    growth_ = theory ? 2.0 : params_.level_growth;
    threshold_const_ = theory ? 32.0 : 1.0;
    s_1_ = ceil_count((theory ? 16.0 : 1.0) * params_.inv_eps_sq() * std::log(1.0 / params_.delta));
  }

  std::uint64_t s_1() const noexcept { return s_1_; }

  /// Samples drawn at a 1-based level: s_1, then (g^l - g^(l-1)) * s_1.
  std::uint64_t s_l(int level) const {
    if (level < 1) fail(Errc::domain, "levels start at 1");
    if (level == 1) return s_1_;
    const double f = std::pow(growth_, level) - std::pow(growth_, level - 1);
    return ceil_count(f * static_cast<double>(s_1_));
  }

  /// Budget threshold for the j-th arm of an epoch.
  std::uint64_t tau_j(std::uint64_t j) const {
    if (j < 1) fail(Errc::domain, "arm index within an epoch starts at 1");
    const double jd = static_cast<double>(j);
    return ceil_count(threshold_const_ * params_.inv_eps_sq() * std::log(jd * jd / params_.delta));
  }

  /// Probability of the narrow gap epsilon/4 for the j-th arm of an epoch.
  static double p_j(std::uint64_t j) {
    if (j < 1) fail(Errc::domain, "arm index within an epoch starts at 1");
    return 1.0 / (std::log(static_cast<double>(j)) + 1.0);
  }

  /// Whether a surviving challenger at `level` may replace the stored arm.
  bool replacement_allowed(int level, std::uint64_t j) const {
    return std::pow(growth_, level) * static_cast<double>(s_1_) > static_cast<double>(tau_j(j));
  }

  /// Smallest level at which replacement is permitted for the j-th arm.
  int replacement_level(std::uint64_t j) const {
    int level = 1;
    while (!replacement_allowed(level, j)) ++level;
    return level;
  }

  const EpsBestParams& params() const noexcept { return params_; }

 private:
  EpsBestParams params_;
  double growth_ = 2.0;
  double threshold_const_ = 32.0;
  std::uint64_t s_1_ = 0;
};

inline ParamSet2 param_set_2(double epsilon, double delta) {
  return ParamSet2(EpsBestParams{epsilon, delta, ConstantMode::theory});
}

// ---------------------------------------------------------------------------
// Per-algorithm sample counts.

/// ceil((T/K)^(2/3) * (ln T)^(1/3)).
inline std::uint64_t uniform_exploration_pulls(std::uint64_t num_arms, std::uint64_t horizon) {
  if (num_arms == 0 || horizon < 2) fail(Errc::domain, "uniform exploration needs K >= 1 and T >= 2");
  const double ratio = static_cast<double>(horizon) / static_cast<double>(num_arms);
  const double n = std::cbrt(ratio * ratio) * std::cbrt(std::log(static_cast<double>(horizon)));
  return std::max<std::uint64_t>(1, ceil_count(n));
}

/// Per-arm pulls of naive uniform elimination: ceil(C/eps^2 * ln(K/delta)),
/// C = 16 in theory mode and 1 in experiment mode.
inline std::uint64_t naive_elimination_pulls(std::uint64_t num_arms, const EpsBestParams& p) {
  p.validate();
  const double c = p.mode == ConstantMode::theory ? 16.0 : 1.0;
  return ceil_count(c * p.inv_eps_sq() * std::log(static_cast<double>(num_arms) / p.delta));
}

/// Level count of aggressive selective promotion: ceil(log* K) + 1.
inline int asp_levels(std::uint64_t num_arms) { return log_star(static_cast<double>(num_arms)) + 1; }

/// Final per-arm samples of aggressive selective promotion: ceil(C * log*(K) / eps^2).
inline std::uint64_t asp_final_samples(std::uint64_t num_arms, const EpsBestParams& p) {
  p.validate();
  const double c = p.mode == ConstantMode::theory ? 32.0 : 1.0;
  const double ls = std::max(1, log_star(static_cast<double>(num_arms)));
  return ceil_count(c * ls * p.inv_eps_sq());
}

/// Per-arm samples at level `level` of aggressive selective promotion.
inline std::uint64_t asp_level_samples(int level, const EpsBestParams& p) {
  if (p.mode == ConstantMode::experiment) return p.experiment_level_samples(level);
  return param_set_1(level, p.epsilon, p.delta).s_l;
}

/// Bucket count of the log K algorithm: ceil(log_4 K), at least 1.
inline int bucket_log_levels(std::uint64_t num_arms) { return std::max(1, ceil_log4(num_arms)); }

/// Level count of the log log K algorithm: ceil(log_4 ln K), at least 2.
inline int bucket_loglog_levels(std::uint64_t num_arms) {
  const double lnk = std::log(static_cast<double>(num_arms));
  if (lnk <= 1.0) return 2;
  return std::max(2, static_cast<int>(std::ceil(std::log(lnk) / std::log(4.0))));
}

/// Bucket samples: ceil(4/eps_l^2 * (ln(1/delta) + 3^l)) with eps_l = eps/(10*2^(l-1)).
inline std::uint64_t bucket_level_samples(int level, const EpsBestParams& p) {
  p.validate();
  if (level < 1) fail(Errc::domain, "levels start at 1");
  if (p.mode == ConstantMode::experiment) return p.experiment_level_samples(level);
  const double eps_l = p.epsilon / (10.0 * std::exp2(level - 1));
  return ceil_count(4.0 / (eps_l * eps_l) * (std::log(1.0 / p.delta) + std::pow(3.0, level)));
}

/// Samples for an arm reaching the single-slot top level of the log log K
/// algorithm: ceil(4/eps^2 * (ln(1/delta) + ln K)) in theory mode; the
/// ordinary per-level count for `top_level` in experiment mode.
inline std::uint64_t bucket_top_samples(std::uint64_t num_arms, int top_level, const EpsBestParams& p) {
  p.validate();
  if (p.mode == ConstantMode::experiment) return p.experiment_level_samples(top_level);
  return ceil_count(4.0 * p.inv_eps_sq() *
                    (std::log(1.0 / p.delta) + std::log(static_cast<double>(num_arms))));
}

/// Exploration epsilon for explore-and-commit.
enum class EpsilonRule {
  expected,       // (K/T)^(1/3)
  probabilistic,  // (1/2)(K/T)^(1/3)
};

inline double default_epsilon(std::uint64_t num_arms, std::uint64_t horizon, EpsilonRule rule = EpsilonRule::expected) {
  if (num_arms == 0 || horizon == 0) fail(Errc::domain, "default epsilon needs K, T >= 1");
  const double e = std::cbrt(static_cast<double>(num_arms) / static_cast<double>(horizon));
  return rule == EpsilonRule::expected ? e : 0.5 * e;
}

}  // namespace banditstream
