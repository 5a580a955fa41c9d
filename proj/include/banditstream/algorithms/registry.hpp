#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "banditstream/algorithms/aggressive_promotion.hpp"
#include "banditstream/algorithms/bucket.hpp"
#include "banditstream/algorithms/explore_commit.hpp"
#include "banditstream/algorithms/jin_single_arm.hpp"
#include "banditstream/algorithms/naive_elimination.hpp"
#include "banditstream/algorithms/uniform_exploration.hpp"

namespace banditstream {

enum class AlgorithmId { uniform_exploration, naive_elimination, asp_logstar, bucket_log, bucket_loglog, jin_single_arm };

inline constexpr std::array<AlgorithmId, 6> kAllAlgorithms = {
    AlgorithmId::uniform_exploration, AlgorithmId::naive_elimination, AlgorithmId::bucket_log,
    AlgorithmId::bucket_loglog,       AlgorithmId::asp_logstar,       AlgorithmId::jin_single_arm};

/// The epsilon-best routines (everything except the uniform baseline).
inline constexpr std::array<AlgorithmId, 5> kEpsBestAlgorithms = {
    AlgorithmId::naive_elimination, AlgorithmId::asp_logstar, AlgorithmId::bucket_log, AlgorithmId::bucket_loglog,
    AlgorithmId::jin_single_arm};

inline constexpr std::string_view algorithm_name(AlgorithmId id) {
  switch (id) {
    case AlgorithmId::uniform_exploration: return "uniform-exploration";
    case AlgorithmId::naive_elimination: return "naive-elimination";
    case AlgorithmId::asp_logstar: return "asp-logstar";
    case AlgorithmId::bucket_log: return "bucket-log";
    case AlgorithmId::bucket_loglog: return "bucket-loglog";
    case AlgorithmId::jin_single_arm: return "jin-single-arm";
  }
  return "unknown";
}

inline AlgorithmId parse_algorithm(std::string_view name) {
  for (AlgorithmId id : kAllAlgorithms)
    if (algorithm_name(id) == name) return id;
  fail(Errc::config, "unknown algorithm id '" + std::string(name) + "'");
}

/// Declared arm-memory bound (buffer arm excluded).
inline std::size_t memory_bound(AlgorithmId id, std::uint64_t num_arms) {
  switch (id) {
    case AlgorithmId::uniform_exploration: return UniformExploration::memory_bound(num_arms);
    case AlgorithmId::naive_elimination: return NaiveElimination::memory_bound(num_arms);
    case AlgorithmId::asp_logstar: return AggressiveSelectivePromotion::memory_bound(num_arms);
    case AlgorithmId::bucket_log: return BucketLogK::memory_bound(num_arms);
    case AlgorithmId::bucket_loglog: return BucketLogLogK::memory_bound(num_arms);
    case AlgorithmId::jin_single_arm: return JinSingleArm::memory_bound(num_arms);
  }
  return 0;
}

/// Calls `fn(policy)` with a freshly constructed policy for `id`. The uniform
/// baseline ignores `params` and uses its default per-arm count for (K, T).
template <class Fn>
decltype(auto) with_policy(AlgorithmId id, const EpsBestParams& params, std::uint64_t num_arms,
                           std::uint64_t horizon, Fn&& fn) {
  switch (id) {
    case AlgorithmId::uniform_exploration: {
      auto p = UniformExploration::with_default_pulls(num_arms, horizon);
      return fn(p);
    }
    case AlgorithmId::naive_elimination: {
      NaiveElimination p(params);
      return fn(p);
    }
    case AlgorithmId::asp_logstar: {
      AggressiveSelectivePromotion p(params);
      return fn(p);
    }
    case AlgorithmId::bucket_log: {
      BucketLogK p(params);
      return fn(p);
    }
    case AlgorithmId::bucket_loglog: {
      BucketLogLogK p(params);
      return fn(p);
    }
    case AlgorithmId::jin_single_arm: {
      JinSingleArm p(params);
      return fn(p);
    }
  }
  fail(Errc::config, "unhandled algorithm id");
}

inline PolicyOutcome run_explore_and_commit(AlgorithmId id, BanditEnvironment& env, const EpsBestParams& params) {
  return with_policy(id, params, env.num_arms(), env.horizon(),
                     [&](auto& policy) { return explore_and_commit(env, policy); });
}

inline Selection run_selection(AlgorithmId id, BanditEnvironment& env, const EpsBestParams& params) {
  return with_policy(id, params, env.num_arms(), env.horizon(), [&](auto& policy) { return policy.select(env); });
}

}  // namespace banditstream
