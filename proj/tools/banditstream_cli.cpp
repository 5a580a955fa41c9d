// banditstream: run experiment grids, rebuild relative tables, self-check.
//
//   banditstream run --config grid.json --out results/
//   banditstream run --instance uniform,standout --num-arms 500 --horizon-rule 1000K --seeds 0..49 --out results/
//   banditstream table --in results/runs.csv --out relative.md
//   banditstream verify
//
// Exit status: 0 ok, 1 invariant failure, 2 configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "banditstream/banditstream.hpp"

namespace bs = banditstream;
namespace bh = banditstream::harness;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitConfig = 2;

std::vector<std::string> split(const std::string& text, char sep = ',') {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const auto s = std::stoull(text);
      return {s, s};
    }
    return {std::stoull(text.substr(0, dots)), std::stoull(text.substr(dots + 2))};
  } catch (const std::logic_error&) {
    bs::fail(bs::Errc::config, "bad seed range '" + text + "' (expected a..b)");
  }
}

struct RunFlags {
  std::string config_path;
  std::string instances;
  std::string algos;
  std::string num_arms;
  std::string horizon_rules;
  std::string seeds;
  std::string mode;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::string out_dir = "results";
  bool no_timing = false;
  unsigned threads = 0;
};

bh::ExperimentConfig resolve_config(const RunFlags& f) {
  bh::ExperimentConfig c;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) bs::fail(bs::Errc::config, "cannot open config " + f.config_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      bs::fail(bs::Errc::config, f.config_path + ": " + e.what());
    }
    c = bh::config_from_json(j);
  }
  // Inline flags override the file.
  if (!f.instances.empty()) {
    c.kinds.clear();
    for (const auto& s : split(f.instances)) c.kinds.push_back(bs::parse_instance_kind(s));
  }
  if (!f.algos.empty()) {
    c.algorithms.clear();
    for (const auto& s : split(f.algos)) c.algorithms.push_back(bs::parse_algorithm(s));
  }
  if (!f.num_arms.empty()) {
    c.num_arms.clear();
    for (const auto& s : split(f.num_arms)) {
      try {
        c.num_arms.push_back(std::stoull(s));
      } catch (const std::logic_error&) {
        bs::fail(bs::Errc::config, "bad K '" + s + "'");
      }
    }
  }
  if (!f.horizon_rules.empty()) {
    c.horizons.clear();
    for (const auto& s : split(f.horizon_rules)) c.horizons.push_back(bh::parse_horizon_rule(s));
  }
  if (!f.seeds.empty()) std::tie(c.seed_first, c.seed_last) = parse_seed_range(f.seeds);
  if (!f.mode.empty()) c.mode = bs::parse_mode(f.mode);
  if (f.epsilon) c.epsilon = f.epsilon;
  if (f.delta) c.delta = *f.delta;
  c.validate();
  return c;
}

int cmd_run(const RunFlags& f) {
  const bh::ExperimentConfig config = resolve_config(f);
  const unsigned threads = f.threads ? f.threads : bh::thread_count();
  const auto records = bh::run_experiment(config, threads);

  std::size_t failed = 0;
  for (const auto& r : records)
    if (!r.ok()) {
      if (failed++ < 5)
        std::cerr << "run failed: " << r.algorithm << ' ' << r.instance_kind << " K=" << r.num_arms
                  << " seed=" << r.seed << ": " << r.error << '\n';
    }

  bh::RelativeTable table;
  bool have_table = true;
  try {
    table = bh::aggregate(records);
  } catch (const bs::BanditError& e) {
    std::cerr << "no relative table: " << e.what() << '\n';
    have_table = false;
  }
  bh::write_results(records, table, f.out_dir, bh::to_json(config), bh::CsvOptions{!f.no_timing});
  if (have_table) std::cout << bh::table_to_markdown(table);
  std::cout << records.size() << " runs written to " << f.out_dir << '\n';
  if (failed) {
    std::cerr << failed << " of " << records.size() << " runs failed\n";
    return kExitInvariant;
  }
  return kExitOk;
}

int cmd_table(const std::string& in_path, const std::string& out_path) {
  const auto table = bh::aggregate(bh::read_results(in_path));
  const bool markdown = out_path.empty() || out_path.ends_with(".md");
  const std::string text = markdown ? bh::table_to_markdown(table) : bh::table_to_csv(table);
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!(out << text)) bs::fail(bs::Errc::io, "cannot write " + out_path);
  }
  return kExitOk;
}

int cmd_verify() {
  bool all = true;
  for (const auto& r : bh::run_verify_suite()) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    all = all && r.passed;
  }
  return all ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming multi-armed bandit experiments"};
  app.require_subcommand(1);

  RunFlags rf;
  auto* run = app.add_subcommand("run", "Run an experiment grid and write runs.csv, relative.csv, config.json");
  run->add_option("--config", rf.config_path, "JSON experiment config")->check(CLI::ExistingFile);
  run->add_option("--instance", rf.instances, "Instance kinds, comma separated");
  run->add_option("--algos", rf.algos, "Algorithm ids, comma separated");
  run->add_option("--num-arms", rf.num_arms, "K values, comma separated");
  run->add_option("--horizon-rule", rf.horizon_rules, "Horizon rules such as 1000K or 1000K^2, comma separated");
  run->add_option("--seeds", rf.seeds, "Inclusive seed range a..b");
  run->add_option("--mode", rf.mode, "Constant mode")->check(CLI::IsMember({"theory", "experiment"}));
  run->add_option("--epsilon", rf.epsilon, "Fixed epsilon (default (K/T)^(1/3))");
  run->add_option("--delta", rf.delta, "Failure probability");
  run->add_option("--out", rf.out_dir, "Output directory")->capture_default_str();
  run->add_flag("--no-timing", rf.no_timing, "Omit wall_time_ms so runs.csv is byte-stable");
  run->add_option("--threads", rf.threads, "Worker threads (default BANDITSTREAM_THREADS or all cores)");

  std::string table_in, table_out;
  auto* table = app.add_subcommand("table", "Rebuild the relative table from a runs CSV");
  table->add_option("--in", table_in, "runs.csv")->required()->check(CLI::ExistingFile);
  table->add_option("--out", table_out, "Output path; .md for markdown, anything else CSV (default: stdout)");

  auto* verify = app.add_subcommand("verify", "Run the oracle-agreement and invariant suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(rf);
    if (*table) return cmd_table(table_in, table_out);
    if (*verify) return cmd_verify();
  } catch (const bs::BanditError& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case bs::Errc::config:
      case bs::Errc::parse:
      case bs::Errc::io:
        return kExitConfig;
      default:
        return kExitInvariant;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return kExitOk;
}
