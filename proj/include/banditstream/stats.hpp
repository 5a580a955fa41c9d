#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "banditstream/errors.hpp"

namespace banditstream {

/// Upper bound on Pr(mean_1 <= mean_2) when two arms whose means differ by at
/// least c*theta are each sampled 4*S/theta^2 times: (1/2)^(c^2-1) * exp(-S).
inline double chernoff_comparison_bound(double S, int c) {
  if (!(S >= 2.0)) fail(Errc::domain, "comparison bound needs S >= 2, got " + std::to_string(S));
  if (c < 1) fail(Errc::domain, "comparison bound needs c >= 1, got " + std::to_string(c));
  const double exponent = static_cast<double>(c) * c - 1.0;
  return std::exp2(-exponent) * std::exp(-S);
}

/// Iterated base-2 logarithm: applications of log2 needed to bring x to <= 1.
inline int log_star(double x) {
  int n = 0;
  while (x > 1.0) {
    x = std::log2(x);
    ++n;
  }
  return n;
}

/// Smallest t >= 0 with 4^t >= x (x >= 0). Exact for integers.
inline int ceil_log4(std::uint64_t x) {
  int t = 0;
  std::uint64_t p = 1;
  while (p < x) {
    p *= 4;
    ++t;
  }
  return t;
}

/// Ceiling of a nonnegative real sample count, as an integer.
inline std::uint64_t ceil_count(double x) {
  if (!(x >= 0.0) || x > 9.0e18) fail(Errc::overflow, "sample count out of range: " + std::to_string(x));
  return static_cast<std::uint64_t>(std::ceil(x));
}

inline double mean_of(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

/// Median; midpoint of the two central values for even counts.
inline double median_of(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Sample standard deviation (n-1 denominator).
inline double stddev_of(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace banditstream
