#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "banditstream/algorithms/registry.hpp"
#include "banditstream/instances.hpp"
#include "banditstream/params.hpp"

namespace banditstream::harness {

/// T = coefficient * K^power.
struct HorizonRule {
  double coefficient = 1000.0;
  int power = 1;

  std::uint64_t horizon(std::uint64_t num_arms) const {
    const double t = coefficient * std::pow(static_cast<double>(num_arms), power);
    if (!(t >= 1.0) || t > 9.0e18) fail(Errc::config, "horizon rule produced T out of range");
    return static_cast<std::uint64_t>(std::llround(t));
  }
};

inline HorizonRule parse_horizon_rule(const std::string& text) {
  // "<coef>K^<power>", "<coef>K", or "<coef>".
  HorizonRule rule;
  const auto k = text.find('K');
  try {
    if (k == std::string::npos) {
      rule.coefficient = std::stod(text);
      rule.power = 0;
      return rule;
    }
    rule.coefficient = k == 0 ? 1.0 : std::stod(text.substr(0, k));
    const auto caret = text.find('^', k);
    rule.power = caret == std::string::npos ? 1 : std::stoi(text.substr(caret + 1));
  } catch (const std::exception&) {
    fail(Errc::config, "cannot parse horizon rule '" + text + "' (expected e.g. 1000K^2)");
  }
  if (rule.power < 0) fail(Errc::config, "horizon rule power must be nonnegative");
  return rule;
}

inline std::string to_string(const HorizonRule& rule) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%gK^%d", rule.coefficient, rule.power);
  return buf;
}

struct ExperimentConfig {
  std::vector<InstanceKind> kinds = {InstanceKind::uniform};
  InstanceSpecConfig instance;  // kind-specific knobs; kind, K, seed, horizon are filled per run
  std::vector<std::size_t> num_arms = {500};
  std::vector<HorizonRule> horizons = {HorizonRule{}};
  std::vector<AlgorithmId> algorithms = {kAllAlgorithms.begin(), kAllAlgorithms.end()};
  std::uint64_t seed_first = 0;
  std::uint64_t seed_last = 49;  // inclusive
  ConstantMode mode = ConstantMode::experiment;
  std::optional<double> epsilon;  // default: rule applied to (K, T)
  EpsilonRule epsilon_rule = EpsilonRule::expected;
  double delta = 0.1;
  double level_growth = 1.2;
  std::uint64_t approx_threshold = 100000;
  bool shuffle = true;

  std::uint64_t num_seeds() const { return seed_last - seed_first + 1; }

  void validate() const {
    if (kinds.empty()) fail(Errc::config, "no instance kinds");
    if (num_arms.empty()) fail(Errc::config, "no K values");
    if (horizons.empty()) fail(Errc::config, "no horizon rules");
    if (algorithms.empty()) fail(Errc::config, "no algorithms");
    if (seed_last < seed_first) fail(Errc::config, "empty seed range");
    for (std::size_t k : num_arms) {
      if (k == 0) fail(Errc::config, "K must be positive");
      for (const auto& rule : horizons)
        if (rule.horizon(k) < k)
          fail(Errc::config, "horizon " + to_string(rule) + " gives T < K for K=" + std::to_string(k));
    }
    if (!(delta > 0.0 && delta < 1.0)) fail(Errc::config, "delta must lie in (0,1)");
    if (epsilon && !(*epsilon > 0.0 && *epsilon < 1.0)) fail(Errc::config, "epsilon must lie in (0,1)");
    if (!(level_growth > 1.0)) fail(Errc::config, "level_growth must exceed 1");
  }

  EpsBestParams params_for(std::uint64_t num_arms_, std::uint64_t horizon) const {
    EpsBestParams p;
    p.epsilon = epsilon ? *epsilon : default_epsilon(num_arms_, horizon, epsilon_rule);
    p.delta = delta;
    p.mode = mode;
    p.level_growth = level_growth;
    return p;
  }
};

inline nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  for (auto k : c.kinds) j["instances"].push_back(to_string(k));
  j["num_arms"] = c.num_arms;
  for (const auto& h : c.horizons) j["horizons"].push_back(to_string(h));
  for (auto a : c.algorithms) j["algorithms"].push_back(std::string(algorithm_name(a)));
  j["seeds"] = {c.seed_first, c.seed_last};
  j["mode"] = to_string(c.mode);
  if (c.epsilon) j["epsilon"] = *c.epsilon;
  else j["epsilon"] = nullptr;
  j["epsilon_rule"] = c.epsilon_rule == EpsilonRule::expected ? "expected" : "probabilistic";
  j["delta"] = c.delta;
  j["level_growth"] = c.level_growth;
  j["approx_threshold"] = c.approx_threshold;
  j["shuffle"] = c.shuffle;
  j["beta"] = c.instance.beta;
  j["standout_mean"] = c.instance.standout_mean;
  j["standout_sigma"] = c.instance.standout_sigma;
  j["standout_cutoff"] = c.instance.standout_cutoff;
  j["relative_aggregation"] = "ratio-of-aggregates";
  return j;
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    if (j.contains("instances")) {
      c.kinds.clear();
      for (const auto& k : j.at("instances")) c.kinds.push_back(parse_instance_kind(k.get<std::string>()));
    }
    if (j.contains("num_arms")) c.num_arms = j.at("num_arms").get<std::vector<std::size_t>>();
    if (j.contains("horizons")) {
      c.horizons.clear();
      for (const auto& h : j.at("horizons")) c.horizons.push_back(parse_horizon_rule(h.get<std::string>()));
    }
    if (j.contains("algorithms")) {
      c.algorithms.clear();
      for (const auto& a : j.at("algorithms")) c.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    }
    if (j.contains("seeds")) {
      const auto s = j.at("seeds").get<std::vector<std::uint64_t>>();
      if (s.size() != 2) fail(Errc::config, "seeds must be [first, last]");
      c.seed_first = s[0];
      c.seed_last = s[1];
    }
    if (j.contains("mode")) c.mode = parse_mode(j.at("mode").get<std::string>());
    if (j.contains("epsilon") && !j.at("epsilon").is_null()) c.epsilon = j.at("epsilon").get<double>();
    if (j.contains("epsilon_rule")) {
      const auto r = j.at("epsilon_rule").get<std::string>();
      if (r == "expected") c.epsilon_rule = EpsilonRule::expected;
      else if (r == "probabilistic") c.epsilon_rule = EpsilonRule::probabilistic;
      else fail(Errc::config, "unknown epsilon_rule '" + r + "'");
    }
    if (j.contains("delta")) c.delta = j.at("delta").get<double>();
    if (j.contains("level_growth")) c.level_growth = j.at("level_growth").get<double>();
    if (j.contains("approx_threshold")) c.approx_threshold = j.at("approx_threshold").get<std::uint64_t>();
    if (j.contains("shuffle")) c.shuffle = j.at("shuffle").get<bool>();
    if (j.contains("beta")) c.instance.beta = j.at("beta").get<double>();
    if (j.contains("standout_mean")) c.instance.standout_mean = j.at("standout_mean").get<double>();
    if (j.contains("standout_sigma")) c.instance.standout_sigma = j.at("standout_sigma").get<double>();
    if (j.contains("standout_cutoff")) c.instance.standout_cutoff = j.at("standout_cutoff").get<double>();
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::config, std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

}  // namespace banditstream::harness
