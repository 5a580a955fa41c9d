#pragma once

#include <concepts>
#include <cstddef>
#include <optional>

#include "banditstream/environment.hpp"

namespace banditstream {

/// What an exploration routine hands back to explore-and-commit.
struct Selection {
  std::optional<ArmHandle> arm;  // empty only if the stream was empty
  bool truncated = false;        // horizon hit before exploration finished
};

/// A single-pass exploration routine. `select` consumes the stream through the
/// environment and returns the arm to commit to. On BudgetTruncated it must
/// return its current incumbent with `truncated` set.
template <class P>
concept ExplorationPolicy = requires(P policy, BanditEnvironment& env) {
  { policy.select(env) } -> std::same_as<Selection>;
};

/// Incumbent-with-benchmark slot shared by the single-arm policies. An empty
/// slot accepts any arm; an occupied one is replaced only on a strictly larger
/// empirical mean.
class IncumbentSlot {
 public:
  bool offer(BanditEnvironment& env, ArmHandle arm, double mean) {
    if (arm_ && !(mean > mean_)) return false;
    if (arm_ && !(*arm_ == arm)) env.drop(*arm_);
    env.retain(arm);
    arm_ = arm;
    mean_ = mean;
    return true;
  }

  const std::optional<ArmHandle>& arm() const noexcept { return arm_; }
  double mean() const noexcept { return mean_; }

 private:
  std::optional<ArmHandle> arm_;
  double mean_ = 0.0;
};

}  // namespace banditstream
