#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "banditstream/errors.hpp"
#include "banditstream/instance.hpp"
#include "banditstream/rng.hpp"

namespace banditstream {

enum class InstanceKind { uniform, standout, trap, lower_bound_hard, ladder };

inline const char* to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::uniform: return "uniform";
    case InstanceKind::standout: return "standout";
    case InstanceKind::trap: return "trap";
    case InstanceKind::lower_bound_hard: return "lower_bound_hard";
    case InstanceKind::ladder: return "ladder";
  }
  return "unknown";
}

inline InstanceKind parse_instance_kind(const std::string& s) {
  if (s == "uniform") return InstanceKind::uniform;
  if (s == "standout") return InstanceKind::standout;
  if (s == "trap") return InstanceKind::trap;
  if (s == "lower_bound_hard" || s == "lower-bound-hard") return InstanceKind::lower_bound_hard;
  if (s == "ladder") return InstanceKind::ladder;
  fail(Errc::config, "unknown instance kind '" + s + "'");
}

struct InstanceSpecConfig {
  InstanceKind kind = InstanceKind::uniform;
  std::size_t num_arms = 1;
  double beta = 0.1;            // trap gap
  std::uint64_t horizon = 0;    // lower_bound_hard only
  double standout_mean = 0.82;
  double standout_sigma = 0.10;
  double standout_cutoff = 0.8;
  double ladder_top = 0.85;     // ladder only
  double ladder_epsilon = 0.1;  // ladder only
  std::uint64_t seed = 0;
};

namespace detail {

inline double open_unit(Engine& eng) {
  // (0,1): 53-bit grid shifted by half a step.
  return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

inline std::size_t uniform_index(Engine& eng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng);
}

inline std::vector<double> trap_means(Engine& eng, std::size_t k, double beta) {
  std::vector<double> means(k, 0.5);
  means[uniform_index(eng, k)] = 0.5 + beta;
  return means;
}

}  // namespace detail

/// Means i.i.d. uniform on (0,1).
inline StreamInstance gen_uniform(std::size_t num_arms, std::uint64_t seed) {
  if (num_arms == 0) fail(Errc::domain, "gen_uniform needs K >= 1");
  Engine eng = make_engine(seed, StreamPurpose::instance, 1);
  std::vector<double> means(num_arms);
  for (double& m : means) m = detail::open_unit(eng);
  return StreamInstance::from_means(means);
}

/// Arm 0 at standout_mean; every other mean drawn from Normal(0.5, sigma^2)
/// and redrawn until it lands in [0, standout_cutoff].
inline StreamInstance gen_standout(std::size_t num_arms, std::uint64_t seed, const InstanceSpecConfig& cfg) {
  if (num_arms < 2) fail(Errc::domain, "gen_standout needs K >= 2");
  if (cfg.standout_cutoff >= cfg.standout_mean)
    fail(Errc::config, "standout_cutoff must be below standout_mean");
  if (!(cfg.standout_mean <= 1.0) || !(cfg.standout_sigma > 0.0) || !(cfg.standout_cutoff > 0.0))
    fail(Errc::config, "standout parameters out of range");
  Engine eng = make_engine(seed, StreamPurpose::instance, 2);
  std::normal_distribution<double> normal(0.5, cfg.standout_sigma);
  std::vector<double> means(num_arms);
  means[0] = cfg.standout_mean;
  for (std::size_t i = 1; i < num_arms; ++i) {
    double m;
    do {
      m = normal(eng);
    } while (m > cfg.standout_cutoff || m < 0.0);
    means[i] = m;
  }
  return StreamInstance::from_means(means);
}

/// K' arms at 1/2, one uniformly placed arm at 1/2 + beta.
inline StreamInstance gen_trap(std::size_t num_arms, double beta, std::uint64_t seed) {
  if (num_arms == 0) fail(Errc::domain, "gen_trap needs K' >= 1");
  if (!(beta > 0.0 && beta <= 0.5)) fail(Errc::domain, "gen_trap needs 0 < beta <= 1/2");
  Engine eng = make_engine(seed, StreamPurpose::instance, 3);
  return StreamInstance::from_means(detail::trap_means(eng, num_arms, beta));
}

/// Gap of the hidden arm in the composed lower-bound instance.
inline double lower_bound_gap(std::size_t num_arms, std::uint64_t horizon) {
  return std::cbrt(static_cast<double>(num_arms) / static_cast<double>(horizon)) / 8.0;
}

/// First half: a trap with gap (1/8)(K/T)^(1/3). Second half: arms at 1/2 except
/// the last, which is 1/2 or 3/4 with equal probability.
inline StreamInstance gen_lower_bound_hard(std::size_t num_arms, std::uint64_t horizon, std::uint64_t seed) {
  if (num_arms % 2 != 0) fail(Errc::domain, "gen_lower_bound_hard needs an even K");
  if (num_arms < 4) fail(Errc::domain, "gen_lower_bound_hard needs K >= 4");
  if (horizon < num_arms) fail(Errc::domain, "gen_lower_bound_hard needs T >= K");
  Engine eng = make_engine(seed, StreamPurpose::instance, 4);
  const std::size_t half = num_arms / 2;
  std::vector<double> means = detail::trap_means(eng, half, lower_bound_gap(num_arms, horizon));
  means.resize(num_arms, 0.5);
  if (std::bernoulli_distribution(0.5)(eng)) means.back() = 0.75;
  return StreamInstance::from_means(means);
}

/// Deterministic staircase {top, top - 1.5e, top - 2.5e, top - 3.5e, ...}.
inline StreamInstance gen_ladder(std::size_t num_arms, double top, double epsilon) {
  if (num_arms == 0) fail(Errc::domain, "gen_ladder needs K >= 1");
  std::vector<double> means(num_arms);
  means[0] = top;
  for (std::size_t i = 1; i < num_arms; ++i) means[i] = top - (static_cast<double>(i) + 0.5) * epsilon;
  return StreamInstance::from_means(means);
}

/// Uniformly random reordering of the stream.
inline StreamInstance shuffle_stream(const StreamInstance& instance, std::uint64_t seed) {
  std::vector<ArmSpec> arms = instance.arms();
  Engine eng = make_engine(seed, StreamPurpose::shuffle);
  for (std::size_t i = arms.size(); i > 1; --i) std::swap(arms[i - 1], arms[detail::uniform_index(eng, i)]);
  return StreamInstance(std::move(arms));
}

inline StreamInstance generate(const InstanceSpecConfig& cfg) {
  switch (cfg.kind) {
    case InstanceKind::uniform: return gen_uniform(cfg.num_arms, cfg.seed);
    case InstanceKind::standout: return gen_standout(cfg.num_arms, cfg.seed, cfg);
    case InstanceKind::trap: return gen_trap(cfg.num_arms, cfg.beta, cfg.seed);
    case InstanceKind::lower_bound_hard: return gen_lower_bound_hard(cfg.num_arms, cfg.horizon, cfg.seed);
    case InstanceKind::ladder: return gen_ladder(cfg.num_arms, cfg.ladder_top, cfg.ladder_epsilon);
  }
  fail(Errc::config, "unhandled instance kind");
}

// Replay document: {kind, K, seed, means[], best_index}.

inline nlohmann::json instance_to_json(const StreamInstance& instance, InstanceKind kind, std::uint64_t seed) {
  return nlohmann::json{{"kind", to_string(kind)},
                        {"K", instance.size()},
                        {"seed", seed},
                        {"means", instance.means()},
                        {"best_index", instance.best_index()}};
}

inline StreamInstance instance_from_json(const nlohmann::json& doc) {
  try {
    auto means = doc.at("means").get<std::vector<double>>();
    if (doc.contains("K") && doc.at("K").get<std::size_t>() != means.size())
      fail(Errc::parse, "instance document K does not match the number of means");
    StreamInstance out = StreamInstance::from_means(means);
    if (doc.contains("best_index") && doc.at("best_index").get<std::size_t>() != out.best_index())
      fail(Errc::parse, "instance document best_index disagrees with its means");
    return out;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse, std::string("instance document: ") + e.what());
  }
}

}  // namespace banditstream
