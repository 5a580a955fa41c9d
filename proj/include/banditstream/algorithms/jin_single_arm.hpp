#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "banditstream/algorithms/policy.hpp"
#include "banditstream/params.hpp"

namespace banditstream {

/// Single-arm epsilon-best routine with epochs.
///
/// The first arm is stored with a benchmark from s_1 samples. Every later arm
/// is the j-th challenger of the current epoch: it draws a gap alpha (eps/4
/// with probability p_j, else eps/2) and climbs levels, accumulating s_l more
/// samples per level. It is dropped as soon as its running mean falls below
/// benchmark + alpha, and replaces the stored arm once it survives a level with
/// g^l * s_1 > tau_j. Replacement resets j and sets the benchmark to the
/// challenger's running mean.
class JinSingleArm {
 public:
  explicit JinSingleArm(EpsBestParams params) : schedule_(params) {}

  static constexpr std::size_t memory_bound(std::uint64_t /*num_arms*/) { return 1; }

  const ParamSet2& schedule() const noexcept { return schedule_; }
  std::uint64_t replacements() const noexcept { return replacements_; }

  Selection select(BanditEnvironment& env) {
    const double eps = schedule_.params().epsilon;
    std::optional<ArmHandle> stored;
    double benchmark = 0.0;
    std::uint64_t j = 0;
    replacements_ = 0;

    std::optional<ArmHandle> arriving;
    try {
      if (!(arriving = env.next_arm())) return {std::nullopt, false};
      benchmark = env.batch_pull(*arriving, schedule_.s_1()).mean();
      env.retain(*arriving);
      stored = arriving;

      while ((arriving = env.next_arm())) {
        ++j;
        const bool narrow = std::bernoulli_distribution(ParamSet2::p_j(j))(env.policy_rng());
        const double alpha = narrow ? eps / 4.0 : eps / 2.0;
        BatchResult total;
        for (int level = 1;; ++level) {
          const BatchResult r = env.batch_pull(*arriving, schedule_.s_l(level));
          total.successes += r.successes;
          total.pulls += r.pulls;
          const double m = total.mean();
          if (m < benchmark + alpha) break;
          if (schedule_.replacement_allowed(level, j)) {
            env.drop(*stored);
            env.retain(*arriving);
            stored = arriving;
            benchmark = m;
            j = 0;
            ++replacements_;
            break;
          }
        }
      }
    } catch (const BudgetTruncated&) {
      return {stored ? stored : arriving, true};
    }
    return {stored, false};
  }

 private:
  ParamSet2 schedule_;
  std::uint64_t replacements_ = 0;
};

}  // namespace banditstream
