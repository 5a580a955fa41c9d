#pragma once

#include <cstdint>
#include <optional>

#include "banditstream/algorithms/policy.hpp"
#include "banditstream/params.hpp"

namespace banditstream {

/// Pulls every arriving arm N times and keeps the empirical best. One arm of
/// memory.
class UniformExploration {
 public:
  explicit UniformExploration(std::uint64_t pulls_per_arm) : pulls_per_arm_(pulls_per_arm) {
    if (pulls_per_arm == 0) fail(Errc::domain, "uniform exploration needs N >= 1");
  }

  /// N = ceil((T/K)^(2/3) (ln T)^(1/3)).
  static UniformExploration with_default_pulls(std::uint64_t num_arms, std::uint64_t horizon) {
    return UniformExploration(uniform_exploration_pulls(num_arms, horizon));
  }

  static constexpr std::size_t memory_bound(std::uint64_t /*num_arms*/) { return 1; }

  std::uint64_t pulls_per_arm() const noexcept { return pulls_per_arm_; }

  Selection select(BanditEnvironment& env) {
    IncumbentSlot best;
    std::optional<ArmHandle> arriving;
    try {
      while ((arriving = env.next_arm())) {
        const double m = env.batch_pull(*arriving, pulls_per_arm_).mean();
        best.offer(env, *arriving, m);
      }
    } catch (const BudgetTruncated&) {
      return {best.arm() ? best.arm() : arriving, true};
    }
    return {best.arm(), false};
  }

 private:
  std::uint64_t pulls_per_arm_;
};

}  // namespace banditstream
