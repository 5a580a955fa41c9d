#pragma once

#include <cstdint>
#include <optional>

#include "banditstream/algorithms/policy.hpp"
#include "banditstream/params.hpp"

namespace banditstream {

/// Naive uniform elimination: uniform exploration with the per-arm count
/// ceil(C/eps^2 * ln(K/delta)) derived from (eps, delta) and the stream length.
class NaiveElimination {
 public:
  explicit NaiveElimination(EpsBestParams params) : params_(params) { params_.validate(); }

  static constexpr std::size_t memory_bound(std::uint64_t /*num_arms*/) { return 1; }

  Selection select(BanditEnvironment& env) {
    const std::uint64_t per_arm = naive_elimination_pulls(env.num_arms(), params_);
    IncumbentSlot best;
    std::optional<ArmHandle> arriving;
    try {
      while ((arriving = env.next_arm())) {
        const double m = env.batch_pull(*arriving, per_arm).mean();
        best.offer(env, *arriving, m);
      }
    } catch (const BudgetTruncated&) {
      return {best.arm() ? best.arm() : arriving, true};
    }
    return {best.arm(), false};
  }

 private:
  EpsBestParams params_;
};

}  // namespace banditstream
