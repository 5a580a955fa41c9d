#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "banditstream/algorithms/policy.hpp"
#include "banditstream/params.hpp"

namespace banditstream {

namespace detail {

/// Buckets of capacity 4. A full bucket at level l samples each member s_l
/// times and sends the empirical best up; the rest are dropped.
class BucketLadder {
 public:
  static constexpr std::size_t kCapacity = 4;

  void reset(int levels, std::vector<std::uint64_t> samples) {
    buckets_.assign(levels, {});
    samples_ = std::move(samples);
  }

  int levels() const noexcept { return static_cast<int>(buckets_.size()); }
  std::vector<ArmHandle>& bucket(int level) { return buckets_[level]; }
  bool full(int level) const { return buckets_[level].size() >= kCapacity; }

  /// Empties bucket `level` and returns its winner, still retained. Singleton
  /// buckets are passed through without sampling.
  ArmHandle play_off(BanditEnvironment& env, int level) {
    std::vector<ArmHandle>& b = buckets_[level];
    std::size_t best = 0;
    if (b.size() > 1) {
      double best_mean = 0.0;
      for (std::size_t i = 0; i < b.size(); ++i) {
        const double m = env.batch_pull(b[i], samples_[level]).mean();
        if (i == 0 || m > best_mean) {
          best = i;
          best_mean = m;
        }
      }
    }
    const ArmHandle winner = b[best];
    for (std::size_t i = 0; i < b.size(); ++i)
      if (i != best) env.drop(b[i]);
    b.clear();
    return winner;
  }

  /// Front of the highest nonempty bucket: the arm that has survived the most
  /// play-offs.
  std::optional<ArmHandle> most_promoted() const {
    for (auto it = buckets_.rbegin(); it != buckets_.rend(); ++it)
      if (!it->empty()) return it->front();
    return std::nullopt;
  }

 private:
  std::vector<std::vector<ArmHandle>> buckets_;
  std::vector<std::uint64_t> samples_;
};

}  // namespace detail

/// ceil(log_4 K) buckets of four arms. The last bucket is resolved once the
/// stream ends and every lower bucket has been flushed upward.
class BucketLogK {
 public:
  explicit BucketLogK(EpsBestParams params) : params_(params) { params_.validate(); }

  static std::size_t memory_bound(std::uint64_t num_arms) {
    return detail::BucketLadder::kCapacity * static_cast<std::size_t>(bucket_log_levels(num_arms));
  }

  Selection select(BanditEnvironment& env) {
    const int t = bucket_log_levels(env.num_arms());
    std::vector<std::uint64_t> samples;
    for (int l = 1; l <= t; ++l) samples.push_back(bucket_level_samples(l, params_));
    ladder_.reset(t, std::move(samples));

    std::optional<ArmHandle> arriving;
    try {
      while ((arriving = env.next_arm())) {
        env.retain(*arriving);
        ladder_.bucket(0).push_back(*arriving);
        for (int l = 0; l + 1 < t && ladder_.full(l); ++l) promote(env, l);
      }
      for (int l = 0; l + 1 < t; ++l)
        if (!ladder_.bucket(l).empty()) promote(env, l);
      if (ladder_.bucket(t - 1).empty()) return {std::nullopt, false};
      return {ladder_.play_off(env, t - 1), false};
    } catch (const BudgetTruncated&) {
      std::optional<ArmHandle> best = ladder_.most_promoted();
      return {best ? best : arriving, true};
    }
  }

 private:
  void promote(BanditEnvironment& env, int level) {
    const ArmHandle winner = ladder_.play_off(env, level);
    ladder_.bucket(level + 1).push_back(winner);
  }

  EpsBestParams params_;
  detail::BucketLadder ladder_;
};

/// ceil(log_4 ln K) levels (at least 2): four-arm buckets below a single-arm
/// top level. An arm reaching the top is sampled s_T times and replaces the
/// stored arm only if its mean strictly beats the stored benchmark; the stored
/// arm is never re-sampled.
class BucketLogLogK {
 public:
  explicit BucketLogLogK(EpsBestParams params) : params_(params) { params_.validate(); }

  static std::size_t memory_bound(std::uint64_t num_arms) {
    return detail::BucketLadder::kCapacity * static_cast<std::size_t>(bucket_loglog_levels(num_arms) - 1) + 1;
  }

  Selection select(BanditEnvironment& env) {
    const int t = bucket_loglog_levels(env.num_arms());
    const int lower = t - 1;
    std::vector<std::uint64_t> samples;
    for (int l = 1; l <= lower; ++l) samples.push_back(bucket_level_samples(l, params_));
    ladder_.reset(lower, std::move(samples));
    top_samples_ = bucket_top_samples(env.num_arms(), t, params_);
    top_ = IncumbentSlot{};

    std::optional<ArmHandle> arriving;
    try {
      while ((arriving = env.next_arm())) {
        env.retain(*arriving);
        ladder_.bucket(0).push_back(*arriving);
        for (int l = 0; l < lower && ladder_.full(l); ++l) promote(env, l);
      }
      for (int l = 0; l < lower; ++l)
        if (!ladder_.bucket(l).empty()) promote(env, l);
      return {top_.arm(), false};
    } catch (const BudgetTruncated&) {
      if (top_.arm()) return {top_.arm(), true};
      std::optional<ArmHandle> best = ladder_.most_promoted();
      return {best ? best : arriving, true};
    }
  }

  const IncumbentSlot& top() const noexcept { return top_; }

 private:
  void promote(BanditEnvironment& env, int level) {
    const ArmHandle winner = ladder_.play_off(env, level);
    if (level + 1 < ladder_.levels()) {
      ladder_.bucket(level + 1).push_back(winner);
      return;
    }
    const double m = env.batch_pull(winner, top_samples_).mean();
    if (!top_.offer(env, winner, m)) env.drop(winner);
  }

  EpsBestParams params_;
  detail::BucketLadder ladder_;
  std::uint64_t top_samples_ = 0;
  IncumbentSlot top_;
};

}  // namespace banditstream
