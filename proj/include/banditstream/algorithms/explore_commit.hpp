#pragma once

#include <cstdint>

#include "banditstream/algorithms/policy.hpp"

namespace banditstream {

struct PolicyOutcome {
  std::size_t committed_index = 0;
  double committed_mean = 0.0;
  double gap = 0.0;  // best mean minus committed mean
  double total_regret = 0.0;
  double explore_regret = 0.0;
  double commit_regret = 0.0;
  std::uint64_t explore_pulls = 0;
  std::uint64_t commit_pulls = 0;
  std::size_t peak_retained = 0;
  bool truncated = false;
};

/// Runs the exploration policy on a fresh environment, then spends every
/// remaining pull on the arm it returned.
template <ExplorationPolicy Policy>
PolicyOutcome explore_and_commit(BanditEnvironment& env, Policy& policy) {
  if (env.pulls_used() != 0 || env.cursor() != 0) fail(Errc::config, "explore_and_commit needs a fresh environment");
  const Selection sel = policy.select(env);
  if (!sel.arm) fail(Errc::domain, "exploration returned no arm");

  PolicyOutcome out;
  out.truncated = sel.truncated;
  out.explore_pulls = env.pulls_used();
  out.explore_regret = env.regret();
  out.committed_index = sel.arm->index;
  out.committed_mean = env.instance()[sel.arm->index].mean;
  out.gap = env.best_mean() - out.committed_mean;

  const std::uint64_t left = env.remaining();
  if (left > 0) {
    if (!env.accessible(*sel.arm))
      fail(Errc::stale_handle, "exploration returned arm " + std::to_string(sel.arm->index) + " without retaining it");
    env.batch_pull(*sel.arm, left);
  }
  out.commit_pulls = env.pulls_used() - out.explore_pulls;
  out.total_regret = env.regret();
  out.commit_regret = out.total_regret - out.explore_regret;
  out.peak_retained = env.peak_retained();
  return out;
}

}  // namespace banditstream
