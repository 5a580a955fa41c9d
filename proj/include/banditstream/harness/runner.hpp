#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "banditstream/algorithms/registry.hpp"
#include "banditstream/environment.hpp"
#include "banditstream/harness/config.hpp"
#include "banditstream/instances.hpp"

namespace banditstream::harness {

/// One row of the results table.
struct RunRecord {
  std::uint64_t seed = 0;
  std::string algorithm;
  std::string instance_kind;
  std::uint64_t num_arms = 0;
  std::uint64_t horizon = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::string mode;
  double total_regret = 0.0;
  std::uint64_t explore_pulls = 0;
  std::uint64_t commit_pulls = 0;
  std::uint64_t peak_retained = 0;
  double committed_gap = 0.0;
  double wall_time_ms = 0.0;
  std::string error;  // empty for successful runs

  bool ok() const noexcept { return error.empty(); }
};

/// One grid cell crossed with one seed.
struct RunJob {
  InstanceKind kind = InstanceKind::uniform;
  std::size_t num_arms = 0;
  HorizonRule horizon_rule;
  AlgorithmId algorithm = AlgorithmId::uniform_exploration;
  std::uint64_t seed = 0;
};

/// Jobs in canonical order: kind, K, horizon rule, algorithm (all in config
/// order), then seed.
inline std::vector<RunJob> enumerate_jobs(const ExperimentConfig& config) {
  std::vector<RunJob> jobs;
  for (InstanceKind kind : config.kinds)
    for (std::size_t k : config.num_arms)
      for (const HorizonRule& rule : config.horizons)
        for (AlgorithmId alg : config.algorithms)
          for (std::uint64_t s = config.seed_first;; ++s) {
            jobs.push_back(RunJob{kind, k, rule, alg, s});
            if (s == config.seed_last) break;
          }
  return jobs;
}

/// Builds the (seeded, optionally shuffled) instance a job runs on. All
/// algorithms of a cell see the same instance for the same seed.
inline StreamInstance build_instance(const ExperimentConfig& config, InstanceKind kind, std::size_t num_arms,
                                     std::uint64_t horizon, std::uint64_t seed) {
  InstanceSpecConfig spec = config.instance;
  spec.kind = kind;
  spec.num_arms = num_arms;
  spec.horizon = horizon;
  spec.seed = seed;
  StreamInstance inst = generate(spec);
  return config.shuffle ? shuffle_stream(inst, seed) : inst;
}

inline RunRecord run_job(const ExperimentConfig& config, const RunJob& job) {
  RunRecord rec;
  rec.seed = job.seed;
  rec.algorithm = std::string(algorithm_name(job.algorithm));
  rec.instance_kind = to_string(job.kind);
  rec.num_arms = job.num_arms;
  rec.mode = to_string(config.mode);
  rec.delta = config.delta;
  const auto start = std::chrono::steady_clock::now();
  try {
    rec.horizon = job.horizon_rule.horizon(job.num_arms);
    const EpsBestParams params = config.params_for(job.num_arms, rec.horizon);
    rec.epsilon = params.epsilon;
    if (job.algorithm != AlgorithmId::uniform_exploration) params.validate();
    BanditEnvironment env(build_instance(config, job.kind, job.num_arms, rec.horizon, job.seed), rec.horizon,
                          job.seed, EnvironmentOptions{config.approx_threshold, false});
    const PolicyOutcome out = run_explore_and_commit(job.algorithm, env, params);
    rec.total_regret = out.total_regret;
    rec.explore_pulls = out.explore_pulls;
    rec.commit_pulls = out.commit_pulls;
    rec.peak_retained = out.peak_retained;
    rec.committed_gap = out.gap;
    if (rec.explore_pulls + rec.commit_pulls > rec.horizon)
      fail(Errc::budget_exhausted, "explore + commit pulls exceed the horizon");
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  rec.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

/// Worker count: BANDITSTREAM_THREADS if set and positive, otherwise the
/// hardware concurrency.
inline unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BANDITSTREAM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) n = static_cast<unsigned>(v);
  }
  return n;
}

/// Runs every job; records come back in canonical order whatever the
/// scheduling.
inline std::vector<RunRecord> run_experiment(const ExperimentConfig& config, unsigned threads = thread_count()) {
  config.validate();
  const std::vector<RunJob> jobs = enumerate_jobs(config);
  std::vector<RunRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) records[i] = run_job(config, jobs[i]);
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return records;
}

}  // namespace banditstream::harness
