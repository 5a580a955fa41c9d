#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "banditstream/errors.hpp"

namespace banditstream {

/// Bernoulli reward law of one arm.
struct ArmSpec {
  double mean = 0.0;
};

/// Ordered arm stream together with its best mean (smallest index on ties).
class StreamInstance {
 public:
  StreamInstance() = default;

  explicit StreamInstance(std::vector<ArmSpec> arms) : arms_(std::move(arms)) {
    if (arms_.empty()) fail(Errc::domain, "stream instance needs at least one arm");
    for (std::size_t i = 0; i < arms_.size(); ++i) {
      const double m = arms_[i].mean;
      if (!(m >= 0.0 && m <= 1.0))
        fail(Errc::domain, "arm " + std::to_string(i) + " mean " + std::to_string(m) + " outside [0,1]");
      if (i == 0 || m > best_mean_) {
        best_mean_ = m;
        best_index_ = i;
      }
    }
  }

  static StreamInstance from_means(const std::vector<double>& means) {
    std::vector<ArmSpec> arms;
    arms.reserve(means.size());
    for (double m : means) arms.push_back(ArmSpec{m});
    return StreamInstance(std::move(arms));
  }

  const std::vector<ArmSpec>& arms() const noexcept { return arms_; }
  std::size_t size() const noexcept { return arms_.size(); }
  const ArmSpec& operator[](std::size_t i) const { return arms_[i]; }
  double best_mean() const noexcept { return best_mean_; }
  std::size_t best_index() const noexcept { return best_index_; }

  std::vector<double> means() const {
    std::vector<double> out;
    out.reserve(arms_.size());
    for (const auto& a : arms_) out.push_back(a.mean);
    return out;
  }

 private:
  std::vector<ArmSpec> arms_;
  double best_mean_ = 0.0;
  std::size_t best_index_ = 0;
};

}  // namespace banditstream
