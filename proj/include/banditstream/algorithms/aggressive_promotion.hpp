#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "banditstream/algorithms/policy.hpp"
#include "banditstream/params.hpp"

namespace banditstream {

/// Aggressive selective promotion: ceil(log* K) + 1 levels, each holding one
/// stored arm, a benchmark mean, and a counter of arms processed there.
///
/// An arm at level l is sampled s_l times. Below the benchmark it is dropped;
/// otherwise it becomes the level's stored arm and its mean the benchmark.
/// After every c_l arms the stored arm is also sent up to level l + 1, where it
/// is processed the same way. The stored arm stays at level l, so one arm may
/// occupy several levels and pull counts per level are fixed by K alone.
class AggressiveSelectivePromotion {
 public:
  /// Levels above this are unreachable for any 64-bit stream length (c_3 is
  /// 2^65536 / 4), and their tower parameters overflow.
  static constexpr int kReachableLevels = 3;

  explicit AggressiveSelectivePromotion(EpsBestParams params) : params_(params) { params_.validate(); }

  static std::size_t memory_bound(std::uint64_t num_arms) {
    return static_cast<std::size_t>(asp_levels(num_arms));
  }

  Selection select(BanditEnvironment& env) {
    const std::uint64_t num_arms = env.num_arms();
    levels_ = asp_levels(num_arms);
    const int computed = std::min(levels_, kReachableLevels);
    samples_.clear();
    quota_.clear();
    for (int l = 1; l <= computed; ++l) {
      samples_.push_back(asp_level_samples(l, params_));
      quota_.push_back(param_set_1(l, params_.epsilon, params_.delta).c_l);
    }
    slots_.assign(levels_, std::nullopt);
    bench_.assign(levels_, 0.0);
    counters_.assign(levels_, 0);

    std::optional<ArmHandle> arriving;
    try {
      while ((arriving = env.next_arm())) {
        process(env, *arriving, 0);
      }
      return {final_round(env, asp_final_samples(num_arms, params_)), false};
    } catch (const BudgetTruncated&) {
      std::optional<ArmHandle> best = best_by_benchmark();
      return {best ? best : arriving, true};
    }
  }

  const std::vector<std::uint64_t>& counters() const noexcept { return counters_; }
  const std::vector<double>& benchmarks() const noexcept { return bench_; }

 private:
  void process(BanditEnvironment& env, ArmHandle arm, int level) {
    const double m = env.batch_pull(arm, samples_[level]).mean();
    std::optional<ArmHandle>& slot = slots_[level];
    if (m < bench_[level]) {
      release(env, arm);
    } else {
      const std::optional<ArmHandle> previous = slot;
      slot = arm;
      bench_[level] = m;
      if (previous && !(*previous == arm)) release(env, *previous);
      if (!env.is_retained(arm)) env.retain(arm);
    }
    if (++counters_[level] == quota_[level]) {
      counters_[level] = 0;
      if (level + 1 < static_cast<int>(quota_.size()) && slot) process(env, *slot, level + 1);
    }
  }

  bool held(ArmHandle arm) const {
    return std::any_of(slots_.begin(), slots_.end(), [&](const auto& s) { return s && *s == arm; });
  }

  void release(BanditEnvironment& env, ArmHandle arm) {
    if (!held(arm) && env.accessible(arm)) env.drop(arm);
  }

  std::optional<ArmHandle> final_round(BanditEnvironment& env, std::uint64_t n) {
    std::optional<ArmHandle> winner;
    double best = 0.0;
    std::vector<ArmHandle> seen;
    for (const auto& slot : slots_) {
      if (!slot || std::find(seen.begin(), seen.end(), *slot) != seen.end()) continue;
      seen.push_back(*slot);
      const double m = env.batch_pull(*slot, n).mean();
      if (!winner || m > best) {
        winner = slot;
        best = m;
      }
    }
    return winner;
  }

  std::optional<ArmHandle> best_by_benchmark() const {
    std::optional<ArmHandle> out;
    double best = 0.0;
    for (std::size_t l = 0; l < slots_.size(); ++l) {
      if (slots_[l] && (!out || bench_[l] > best)) {
        out = slots_[l];
        best = bench_[l];
      }
    }
    return out;
  }

  EpsBestParams params_;
  int levels_ = 0;
  std::vector<std::uint64_t> samples_;
  std::vector<std::uint64_t> quota_;
  std::vector<std::optional<ArmHandle>> slots_;
  std::vector<double> bench_;
  std::vector<std::uint64_t> counters_;
};

}  // namespace banditstream
