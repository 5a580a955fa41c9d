#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "banditstream/errors.hpp"
#include "banditstream/instance.hpp"
#include "banditstream/rng.hpp"

namespace banditstream {

/// Opaque reference to an arm of the stream. Only the environment decides
/// whether a handle can still be pulled.
struct ArmHandle {
  std::size_t index = 0;
  friend bool operator==(ArmHandle, ArmHandle) = default;
};

/// Integer outcome of a batch of pulls on one arm.
struct BatchResult {
  std::uint64_t successes = 0;
  std::uint64_t pulls = 0;

  double mean() const noexcept {
    return pulls == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(pulls);
  }
};

struct PullLogEntry {
  std::size_t arm = 0;
  std::uint64_t count = 0;
  double arm_mean = 0.0;
  bool was_retained = false;  // false means the arm was the buffer arm
};

struct EnvironmentOptions {
  /// Batches larger than this draw one normal sample instead of n Bernoullis.
  std::uint64_t approx_threshold = 100000;
  bool record_log = false;
};

/// The only gateway to rewards. Enforces the horizon and the single-pass rule,
/// accumulates regret, and tracks how many arms are held in memory.
///
/// The arm returned by next_arm() is the buffer arm. It does not count toward
/// memory, and it is lost on the following next_arm() unless retained.
class BanditEnvironment {
 public:
  BanditEnvironment(StreamInstance instance, std::uint64_t horizon, std::uint64_t seed,
                    EnvironmentOptions options = {})
      : instance_(std::move(instance)),
        horizon_(horizon),
        seed_(seed),
        options_(options),
        state_(instance_.size(), State::unseen),
        policy_rng_(make_engine(seed, StreamPurpose::policy)) {
    if (instance_.size() == 0) fail(Errc::domain, "environment needs a nonempty instance");
  }

  /// Advances the stream. Returns std::nullopt once every arm has arrived.
  std::optional<ArmHandle> next_arm() {
    if (buffer_) {
      const std::size_t prev = *buffer_;
      if (state_[prev] == State::buffer) lose(prev);
      buffer_.reset();
    }
    if (cursor_ >= instance_.size()) return std::nullopt;
    const std::size_t i = cursor_++;
    state_[i] = State::buffer;
    buffer_ = i;
    engines_.emplace(i, make_engine(seed_, StreamPurpose::reward, i));
    return ArmHandle{i};
  }

  /// One Bernoulli reward.
  int pull(ArmHandle arm) {
    require_accessible(arm, "pull");
    if (pulls_used_ >= horizon_)
      fail(Errc::budget_exhausted, "horizon " + std::to_string(horizon_) + " reached");
    const int reward = bernoulli(engines_.at(arm.index), instance_[arm.index].mean) ? 1 : 0;
    charge(arm, 1);
    return reward;
  }

  /// n pulls of one arm. Batches above approx_threshold are drawn as a single
  /// moment-matched normal sum, rounded and clamped to [0, n]. If fewer than
  /// n pulls remain, the remainder is served and charged, then
  /// BudgetTruncated is thrown.
  BatchResult batch_pull(ArmHandle arm, std::uint64_t n) {
    require_accessible(arm, "batch_pull");
    if (n == 0) fail(Errc::domain, "batch_pull needs n >= 1");
    const std::uint64_t served = std::min(n, remaining());
    BatchResult out{draw_sum(arm.index, served), served};
    if (served > 0) charge(arm, served);
    if (served < n) throw BudgetTruncated(n, served);
    return out;
  }

  /// Moves the buffer arm into memory. Retaining an already retained arm is a
  /// no-op.
  void retain(ArmHandle arm) {
    check_range(arm);
    switch (state_[arm.index]) {
      case State::retained: return;
      case State::buffer:
        state_[arm.index] = State::retained;
        buffer_.reset();
        ++retained_;
        peak_retained_ = std::max(peak_retained_, retained_);
        return;
      default: fail(Errc::stale_handle, "cannot retain arm " + std::to_string(arm.index));
    }
  }

  /// Discards a retained arm or the buffer arm for good.
  void drop(ArmHandle arm) {
    check_range(arm);
    switch (state_[arm.index]) {
      case State::retained:
        --retained_;
        lose(arm.index);
        return;
      case State::buffer:
        buffer_.reset();
        lose(arm.index);
        return;
      default: fail(Errc::stale_handle, "cannot drop arm " + std::to_string(arm.index));
    }
  }

  bool accessible(ArmHandle arm) const {
    return arm.index < state_.size() &&
           (state_[arm.index] == State::buffer || state_[arm.index] == State::retained);
  }
  bool is_retained(ArmHandle arm) const {
    return arm.index < state_.size() && state_[arm.index] == State::retained;
  }

  /// Randomness for the algorithm itself, independent of reward draws.
  Engine& policy_rng() noexcept { return policy_rng_; }

  const StreamInstance& instance() const noexcept { return instance_; }
  std::size_t num_arms() const noexcept { return instance_.size(); }
  double best_mean() const noexcept { return instance_.best_mean(); }
  std::uint64_t horizon() const noexcept { return horizon_; }
  std::uint64_t pulls_used() const noexcept { return pulls_used_; }
  std::uint64_t remaining() const noexcept { return horizon_ - pulls_used_; }
  double regret() const noexcept { return regret_; }
  std::size_t cursor() const noexcept { return cursor_; }
  std::size_t retained_count() const noexcept { return retained_; }
  std::size_t peak_retained() const noexcept { return peak_retained_; }
  std::uint64_t approx_threshold() const noexcept { return options_.approx_threshold; }
  const std::vector<PullLogEntry>& pull_log() const noexcept { return log_; }

 private:
  enum class State : std::uint8_t { unseen, buffer, retained, dropped };

  static bool bernoulli(Engine& eng, double p) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53 < p;
  }

  void check_range(ArmHandle arm) const {
    if (arm.index >= state_.size())
      fail(Errc::stale_handle, "arm " + std::to_string(arm.index) + " is not part of the stream");
  }

  void require_accessible(ArmHandle arm, const char* op) const {
    if (!accessible(arm))
      fail(Errc::stale_handle,
           std::string(op) + " on arm " + std::to_string(arm.index) + " which is neither buffered nor retained");
  }

  void lose(std::size_t i) {
    state_[i] = State::dropped;
    engines_.erase(i);
  }

  std::uint64_t draw_sum(std::size_t i, std::uint64_t n) {
    if (n == 0) return 0;
    Engine& eng = engines_.at(i);
    const double mu = instance_[i].mean;
    if (n <= options_.approx_threshold) {
      std::uint64_t s = 0;
      for (std::uint64_t k = 0; k < n; ++k) s += bernoulli(eng, mu) ? 1 : 0;
      return s;
    }
    const double nd = static_cast<double>(n);
    const double var = nd * mu * (1.0 - mu);
    double s = nd * mu;
    if (var > 0.0) s = std::normal_distribution<double>(nd * mu, std::sqrt(var))(eng);
    s = std::clamp(std::round(s), 0.0, nd);
    return static_cast<std::uint64_t>(s);
  }

  void charge(ArmHandle arm, std::uint64_t n) {
    const double mu = instance_[arm.index].mean;
    pulls_used_ += n;
    regret_ += static_cast<double>(n) * (instance_.best_mean() - mu);
    if (options_.record_log) log_.push_back(PullLogEntry{arm.index, n, mu, is_retained(arm)});
  }

  StreamInstance instance_;
  std::uint64_t horizon_;
  std::uint64_t seed_;
  EnvironmentOptions options_;
  std::vector<State> state_;
  std::unordered_map<std::size_t, Engine> engines_;
  Engine policy_rng_;
  std::optional<std::size_t> buffer_;
  std::size_t cursor_ = 0;
  std::uint64_t pulls_used_ = 0;
  double regret_ = 0.0;
  std::size_t retained_ = 0;
  std::size_t peak_retained_ = 0;
  std::vector<PullLogEntry> log_;
};

}  // namespace banditstream
