#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "banditstream/errors.hpp"
#include "banditstream/harness/runner.hpp"
#include "banditstream/stats.hpp"

namespace banditstream::harness {

inline constexpr std::string_view kBaselineAlgorithm = "uniform-exploration";

struct RelativeEntry {
  std::string algorithm;
  std::size_t runs = 0;
  double mean_regret = 0.0;
  double median_regret = 0.0;
  double relative_mean = 0.0;
  double relative_median = 0.0;
};

struct RelativeCell {
  std::string instance_kind;
  std::uint64_t num_arms = 0;
  std::uint64_t horizon = 0;
  std::vector<RelativeEntry> entries;  // algorithms in first-seen order

  const RelativeEntry* find(std::string_view algorithm) const {
    for (const auto& e : entries)
      if (e.algorithm == algorithm) return &e;
    return nullptr;
  }

  std::string label() const {
    return instance_kind + " K=" + std::to_string(num_arms) + " T=" + std::to_string(horizon);
  }
};

/// Per (instance kind, K, T): each algorithm's mean and median regret divided
/// by the baseline's mean and median regret (ratio of aggregates).
struct RelativeTable {
  std::vector<RelativeCell> cells;

  const RelativeCell* find(std::string_view kind, std::uint64_t num_arms, std::uint64_t horizon) const {
    for (const auto& c : cells)
      if (c.instance_kind == kind && c.num_arms == num_arms && c.horizon == horizon) return &c;
    return nullptr;
  }
};

/// Error rows are skipped.
inline RelativeTable aggregate(const std::vector<RunRecord>& records) {
  struct Group {
    std::string algorithm;
    std::vector<double> regrets;
  };
  struct CellGroups {
    RelativeCell cell;
    std::vector<Group> groups;
  };
  std::vector<CellGroups> cells;

  for (const RunRecord& r : records) {
    if (!r.ok()) continue;
    auto cit = std::find_if(cells.begin(), cells.end(), [&](const CellGroups& c) {
      return c.cell.instance_kind == r.instance_kind && c.cell.num_arms == r.num_arms &&
             c.cell.horizon == r.horizon;
    });
    if (cit == cells.end()) {
      cells.push_back(CellGroups{RelativeCell{r.instance_kind, r.num_arms, r.horizon, {}}, {}});
      cit = std::prev(cells.end());
    }
    auto git = std::find_if(cit->groups.begin(), cit->groups.end(),
                            [&](const Group& g) { return g.algorithm == r.algorithm; });
    if (git == cit->groups.end()) {
      cit->groups.push_back(Group{r.algorithm, {}});
      git = std::prev(cit->groups.end());
    }
    git->regrets.push_back(r.total_regret);
  }

  RelativeTable table;
  for (CellGroups& c : cells) {
    auto base = std::find_if(c.groups.begin(), c.groups.end(),
                             [](const Group& g) { return g.algorithm == kBaselineAlgorithm; });
    if (base == c.groups.end())
      fail(Errc::aggregation, "cell " + c.cell.label() + " has no " + std::string(kBaselineAlgorithm) + " runs");
    const double base_mean = mean_of(base->regrets);
    const double base_median = median_of(base->regrets);
    if (!(base_mean > 0.0) || !(base_median > 0.0))
      fail(Errc::aggregation, "cell " + c.cell.label() + " has zero baseline regret");
    for (const Group& g : c.groups) {
      RelativeEntry e;
      e.algorithm = g.algorithm;
      e.runs = g.regrets.size();
      e.mean_regret = mean_of(g.regrets);
      e.median_regret = median_of(g.regrets);
      const bool is_base = g.algorithm == kBaselineAlgorithm;
      e.relative_mean = is_base ? 1.0 : e.mean_regret / base_mean;
      e.relative_median = is_base ? 1.0 : e.median_regret / base_median;
      c.cell.entries.push_back(std::move(e));
    }
    table.cells.push_back(std::move(c.cell));
  }
  return table;
}

}  // namespace banditstream::harness
