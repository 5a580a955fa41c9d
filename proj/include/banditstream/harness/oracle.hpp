#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "banditstream/errors.hpp"
#include "banditstream/instance.hpp"

namespace banditstream::harness {

inline constexpr std::uint64_t kMaxOracleOutcomes = 1000000;

/// Exact expected total regret of streaming uniform exploration with N pulls
/// per arm on a Bernoulli instance, horizon T. Enumerates every joint vector of
/// per-arm success counts, weights it by its binomial probability, and applies
/// the streaming rule: the first arm is stored, a later arm replaces the stored
/// one only with a strictly larger count.
inline double brute_force_expected_regret(const StreamInstance& instance, std::uint64_t pulls_per_arm,
                                          std::uint64_t horizon) {
  const std::size_t k = instance.size();
  const std::uint64_t n = pulls_per_arm;
  if (n == 0) fail(Errc::domain, "oracle needs N >= 1");
  if (k * n > horizon) fail(Errc::domain, "oracle needs K*N <= T");
  double outcomes = 1.0;
  for (std::size_t i = 0; i < k; ++i) outcomes *= static_cast<double>(n + 1);
  if (outcomes > static_cast<double>(kMaxOracleOutcomes))
    fail(Errc::domain, "oracle enumeration of (N+1)^K outcomes exceeds 10^6");

  // pmf[i][c] = P(Binomial(N, mu_i) = c)
  std::vector<std::vector<double>> pmf(k, std::vector<double>(n + 1));
  for (std::size_t i = 0; i < k; ++i) {
    const double p = instance[i].mean;
    double choose = 1.0;
    for (std::uint64_t c = 0; c <= n; ++c) {
      if (c > 0) choose = choose * static_cast<double>(n - c + 1) / static_cast<double>(c);
      pmf[i][c] = choose * std::pow(p, static_cast<double>(c)) * std::pow(1.0 - p, static_cast<double>(n - c));
    }
  }

  const double best = instance.best_mean();
  double explore = 0.0;
  for (std::size_t i = 0; i < k; ++i) explore += static_cast<double>(n) * (best - instance[i].mean);
  const double commit_pulls = static_cast<double>(horizon - k * n);

  double expected_commit_gap = 0.0;
  std::vector<std::uint64_t> counts(k, 0);
  for (;;) {
    double prob = 1.0;
    std::size_t stored = 0;
    for (std::size_t i = 0; i < k; ++i) {
      prob *= pmf[i][counts[i]];
      if (i > 0 && counts[i] > counts[stored]) stored = i;
    }
    expected_commit_gap += prob * (best - instance[stored].mean);

    std::size_t d = 0;
    while (d < k && counts[d] == n) counts[d++] = 0;
    if (d == k) break;
    ++counts[d];
  }
  return explore + commit_pulls * expected_commit_gap;
}

}  // namespace banditstream::harness
