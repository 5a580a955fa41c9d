#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "banditstream/errors.hpp"
#include "banditstream/harness/aggregate.hpp"
#include "banditstream/harness/config.hpp"
#include "banditstream/harness/runner.hpp"

namespace banditstream::harness {

inline constexpr const char* kRunsHeader =
    "seed,algorithm,instance_kind,K,T,epsilon,delta,mode,total_regret,explore_pulls,commit_pulls,"
    "peak_retained,committed_gap";
inline constexpr const char* kTableHeader =
    "instance_kind,K,T,algorithm,runs,mean_regret,median_regret,relative_mean,relative_median";

/// Six significant digits.
inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

namespace detail {

inline std::string sanitize(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  return s;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::io, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) fail(Errc::io, "write failed for " + path.string());
}

}  // namespace detail

struct CsvOptions {
  /// wall_time_ms varies run to run; leave it out for byte-stable output.
  bool with_timing = true;
};

/// Fixed header, one row per record in the given (canonical) order.
inline std::string runs_to_csv(const std::vector<RunRecord>& records, CsvOptions opts = {}) {
  std::string out = kRunsHeader;
  if (opts.with_timing) out += ",wall_time_ms";
  out += ",error\n";
  for (const RunRecord& r : records) {
    out += std::to_string(r.seed) + ',' + r.algorithm + ',' + r.instance_kind + ',' + std::to_string(r.num_arms) +
           ',' + std::to_string(r.horizon) + ',' + format_real(r.epsilon) + ',' + format_real(r.delta) + ',' +
           r.mode + ',' + format_real(r.total_regret) + ',' + std::to_string(r.explore_pulls) + ',' +
           std::to_string(r.commit_pulls) + ',' + std::to_string(r.peak_retained) + ',' +
           format_real(r.committed_gap);
    if (opts.with_timing) out += ',' + format_real(r.wall_time_ms);
    out += ',' + detail::sanitize(r.error) + '\n';
  }
  return out;
}

/// Inverse of runs_to_csv, with or without the timing column.
inline std::vector<RunRecord> runs_from_csv(const std::string& text, const std::string& source = "<csv>") {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail(Errc::parse, source + ":1: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::string base = kRunsHeader;
  bool timing;
  if (line == base + ",wall_time_ms,error") timing = true;
  else if (line == base + ",error") timing = false;
  else fail(Errc::parse, source + ":1: unexpected header '" + line + "'");
  const std::size_t width = timing ? 15 : 14;

  std::vector<RunRecord> records;
  for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = detail::split_csv_line(line);
    const std::string where = source + ":" + std::to_string(lineno);
    if (f.size() != width)
      fail(Errc::parse, where + ": expected " + std::to_string(width) + " fields, got " + std::to_string(f.size()));
    try {
      std::size_t pos = 0;
      auto u64 = [&](const std::string& s) {
        const auto v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return static_cast<std::uint64_t>(v);
      };
      auto real = [&](const std::string& s) {
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
      };
      RunRecord r;
      r.seed = u64(f[0]);
      r.algorithm = f[1];
      r.instance_kind = f[2];
      r.num_arms = u64(f[3]);
      r.horizon = u64(f[4]);
      r.epsilon = real(f[5]);
      r.delta = real(f[6]);
      r.mode = f[7];
      r.total_regret = real(f[8]);
      r.explore_pulls = u64(f[9]);
      r.commit_pulls = u64(f[10]);
      r.peak_retained = u64(f[11]);
      r.committed_gap = real(f[12]);
      if (timing) r.wall_time_ms = real(f[13]);
      r.error = f[width - 1];
      records.push_back(std::move(r));
    } catch (const std::logic_error& e) {
      fail(Errc::parse, where + ": malformed field (" + e.what() + ")");
    }
  }
  return records;
}

inline std::vector<RunRecord> read_results(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return runs_from_csv(buf.str(), path.string());
}

inline std::string table_to_csv(const RelativeTable& table) {
  std::string out = std::string(kTableHeader) + '\n';
  for (const auto& c : table.cells)
    for (const auto& e : c.entries)
      out += c.instance_kind + ',' + std::to_string(c.num_arms) + ',' + std::to_string(c.horizon) + ',' +
             e.algorithm + ',' + std::to_string(e.runs) + ',' + format_real(e.mean_regret) + ',' +
             format_real(e.median_regret) + ',' + format_real(e.relative_mean) + ',' +
             format_real(e.relative_median) + '\n';
  return out;
}

inline std::string table_to_markdown(const RelativeTable& table) {
  std::string out;
  for (const auto& c : table.cells) {
    out += "### " + c.label() + "\n\n";
    out += "| algorithm | runs | relative mean | relative median |\n|---|---:|---:|---:|\n";
    for (const auto& e : c.entries)
      out += "| " + e.algorithm + " | " + std::to_string(e.runs) + " | " + format_real(e.relative_mean) + " | " +
             format_real(e.relative_median) + " |\n";
    out += '\n';
  }
  return out;
}

/// Writes runs.csv, relative.csv and config.json into `dir`.
inline void write_results(const std::vector<RunRecord>& records, const RelativeTable& table,
                          const std::filesystem::path& dir, const nlohmann::json& resolved_config,
                          CsvOptions opts = {}) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(Errc::io, "cannot create " + dir.string() + ": " + ec.message());
  detail::write_file(dir / "runs.csv", runs_to_csv(records, opts));
  detail::write_file(dir / "relative.csv", table_to_csv(table));
  detail::write_file(dir / "config.json", resolved_config.dump(2) + '\n');
}

}  // namespace banditstream::harness
