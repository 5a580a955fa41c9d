#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "banditstream/algorithms/registry.hpp"
#include "banditstream/harness/oracle.hpp"
#include "banditstream/harness/results_io.hpp"
#include "banditstream/harness/runner.hpp"
#include "banditstream/stats.hpp"

namespace banditstream::harness {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Outcome of one explore-and-commit run with the pull log replayed.
struct AuditReport {
  PolicyOutcome outcome;
  double replayed_regret = 0.0;  // sum over logged pulls of (best - mean)
  bool single_pass_ok = true;    // every logged pull hit an arm that had arrived
  std::uint64_t logged_pulls = 0;
};

inline AuditReport audited_run(AlgorithmId id, const StreamInstance& instance, std::uint64_t horizon,
                               std::uint64_t seed, const EpsBestParams& params,
                               std::uint64_t approx_threshold = 100000) {
  BanditEnvironment env(instance, horizon, seed, EnvironmentOptions{approx_threshold, true});
  AuditReport rep;
  rep.outcome = run_explore_and_commit(id, env, params);
  // The log is written in pull order; an arm may only appear once it has
  // arrived, and once a later arm has arrived it must have been retained.
  std::size_t frontier = 0;
  for (const PullLogEntry& e : env.pull_log()) {
    rep.replayed_regret += static_cast<double>(e.count) * (instance.best_mean() - e.arm_mean);
    rep.logged_pulls += e.count;
    if (e.arm > frontier) frontier = e.arm;
    if (e.arm < frontier && !e.was_retained) rep.single_pass_ok = false;
  }
  return rep;
}

/// Monte Carlo mean regret of streaming uniform exploration against the exact
/// enumeration. Passes when within `sigmas` standard errors.
inline CheckResult check_oracle_agreement(const StreamInstance& instance, std::uint64_t pulls_per_arm,
                                          std::uint64_t horizon, std::uint64_t runs, double sigmas = 3.0) {
  const double exact = brute_force_expected_regret(instance, pulls_per_arm, horizon);
  std::vector<double> regrets;
  regrets.reserve(runs);
  for (std::uint64_t s = 0; s < runs; ++s) {
    BanditEnvironment env(instance, horizon, s);
    UniformExploration policy(pulls_per_arm);
    regrets.push_back(explore_and_commit(env, policy).total_regret);
  }
  const double mc = mean_of(regrets);
  const double se = stddev_of(regrets) / std::sqrt(static_cast<double>(runs));
  CheckResult r;
  r.name = "oracle agreement K=" + std::to_string(instance.size()) + " N=" + std::to_string(pulls_per_arm) +
           " T=" + std::to_string(horizon);
  r.passed = std::abs(mc - exact) <= sigmas * se + 1e-12;
  r.detail = "monte carlo " + format_real(mc) + " vs exact " + format_real(exact) + " (se " + format_real(se) + ")";
  return r;
}

/// Memory, budget, conservation and single-pass invariants for every
/// algorithm over a small grid.
inline std::vector<CheckResult> check_run_invariants(const ExperimentConfig& config) {
  std::size_t memory_bad = 0, budget_bad = 0, conservation_bad = 0, single_pass_bad = 0, runs = 0;
  std::string first_failure;
  for (const RunJob& job : enumerate_jobs(config)) {
    const std::uint64_t horizon = job.horizon_rule.horizon(job.num_arms);
    const StreamInstance inst = build_instance(config, job.kind, job.num_arms, horizon, job.seed);
    const AuditReport rep =
        audited_run(job.algorithm, inst, horizon, job.seed, config.params_for(job.num_arms, horizon),
                    config.approx_threshold);
    ++runs;
    const std::string tag = std::string(algorithm_name(job.algorithm)) + " K=" + std::to_string(job.num_arms) +
                            " seed=" + std::to_string(job.seed);
    auto note = [&](std::size_t& counter, const std::string& what) {
      if (counter++ == 0 && first_failure.empty()) first_failure = what + " (" + tag + ")";
    };
    if (rep.outcome.peak_retained > memory_bound(job.algorithm, job.num_arms)) note(memory_bad, "memory bound");
    if (rep.outcome.explore_pulls + rep.outcome.commit_pulls != horizon || rep.logged_pulls != horizon)
      note(budget_bad, "budget");
    if (std::abs(rep.replayed_regret - rep.outcome.total_regret) > 1e-9 * std::max(1.0, rep.replayed_regret))
      note(conservation_bad, "regret conservation");
    if (!rep.single_pass_ok) note(single_pass_bad, "single-pass");
  }
  auto make = [&](const char* name, std::size_t bad) {
    return CheckResult{name, bad == 0,
                       std::to_string(runs - bad) + "/" + std::to_string(runs) + " runs ok" +
                           (bad ? "; first failure: " + first_failure : std::string())};
  };
  return {make("memory bounds", memory_bad), make("budget: explore + commit = T", budget_bad),
          make("regret conservation", conservation_bad), make("single-pass audit", single_pass_bad)};
}

inline CheckResult check_determinism(const ExperimentConfig& config) {
  const std::string a = runs_to_csv(run_experiment(config), CsvOptions{false});
  const std::string b = runs_to_csv(run_experiment(config), CsvOptions{false});
  return CheckResult{"canonical CSV determinism", a == b, std::to_string(a.size()) + " bytes"};
}

/// The suite behind `banditstream verify`.
inline std::vector<CheckResult> run_verify_suite() {
  std::vector<CheckResult> out;
  out.push_back(check_oracle_agreement(StreamInstance::from_means({0.75, 0.25}), 1, 3, 2000));
  out.push_back(check_oracle_agreement(StreamInstance::from_means({0.6, 0.3, 0.7}), 2, 40, 2000));

  ExperimentConfig grid;
  grid.kinds = {InstanceKind::uniform, InstanceKind::standout};
  grid.num_arms = {64};
  grid.horizons = {HorizonRule{1000.0, 1}};
  grid.seed_first = 0;
  grid.seed_last = 4;
  for (auto& r : check_run_invariants(grid)) out.push_back(std::move(r));

  grid.kinds = {InstanceKind::uniform};
  grid.seed_last = 2;
  out.push_back(check_determinism(grid));
  return out;
}

}  // namespace banditstream::harness
