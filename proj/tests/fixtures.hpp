#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "mosrank/ranks.hpp"
#include "mosrank/transform.hpp"
#include "mosrank/types.hpp"
#include "oracles.hpp"

namespace mosrank::test {

struct Row {
  const char* id;
  double mos;
  double ci95;
};

inline Dataset make_dataset(std::initializer_list<Row> rows) {
  std::vector<MosEstimate> entries;
  for (const auto& r : rows) entries.push_back({r.id, r.mos, r.ci95, std::nullopt, std::nullopt});
  return Dataset(std::move(entries));
}

inline std::vector<std::vector<std::string>> group_ids(const TieGrouping& g) {
  std::vector<std::vector<std::string>> out;
  for (const auto& grp : g.groups) out.push_back(grp.member_ids);
  return out;
}

// The five panels of the transformation figure as numeric fixtures.
struct Scenario {
  const char* name;
  Dataset data;
  std::vector<std::vector<std::string>> expected;
};

inline std::vector<Scenario> transformation_scenarios() {
  return {
      // disjoint CIs
      {"a", make_dataset({{"C1", 4.6, 0.05}, {"C2", 4.3, 0.05}}), {{"C1"}, {"C2"}}},
      // CIs overlap but neither MOS lies inside the other's CI
      {"b", make_dataset({{"C1", 4.5, 0.15}, {"C2", 4.25, 0.15}}), {{"C1"}, {"C2"}}},
      // C2 inside C1's CI
      {"c", make_dataset({{"C1", 4.5, 0.2}, {"C2", 4.4, 0.05}}), {{"C1", "C2"}}},
      // C3 ties C2 but not C1, C2 is closer to C1: C3 may not join {C1, C2}
      {"d", make_dataset({{"C1", 4.6, 0.15}, {"C2", 4.5, 0.1}, {"C3", 4.35, 0.15}}),
       {{"C1", "C2"}, {"C3"}}},
      // C2 ties both neighbours, they do not tie each other, C2 is closer to C3
      {"e", make_dataset({{"C1", 4.6, 0.25}, {"C2", 4.4, 0.1}, {"C3", 4.3, 0.1}}),
       {{"C1"}, {"C2", "C3"}}},
  };
}

// Random dataset: MOS on a 0.01 grid in [1, 5] (so exact equalities occur),
// CI half-widths in [0, 0.5] on a 0.001 grid.
inline Dataset random_dataset(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> mos_grid(100, 500);
  std::uniform_int_distribution<int> ci_grid(0, 500);
  std::vector<MosEstimate> entries;
  for (int i = 0; i < n; ++i)
    entries.push_back({"c" + std::to_string(i), mos_grid(rng) / 100.0, ci_grid(rng) / 1000.0, {}, {}});
  return Dataset(std::move(entries));
}

// Returns an empty string when every structural property holds, otherwise a
// description of the first failure.
inline std::string check_transform_properties(const Dataset& d, const TieGrouping& g) {
  const std::size_t n = d.size();
  if (g.group_of.size() != n) return "group_of size";
  std::vector<int> seen(n, 0);
  for (std::size_t gi = 0; gi < g.groups.size(); ++gi) {
    if (g.groups[gi].members.empty()) return "empty group";
    for (std::size_t i : g.groups[gi].members) {
      ++seen[i];
      if (g.group_of[i] != gi) return "group_of disagrees with membership";
    }
    if (gi > 0 && g.groups[gi - 1].transformed_value < g.groups[gi].transformed_value)
      return "groups not in descending order";
  }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) return "not a partition";

  const Eigen::VectorXd t = g.values();
  for (std::size_t i = 0; i < n; ++i) {
    if (!oracle::has_two_fraction_digits(t(Eigen::Index(i)))) return "more than two fraction digits";
    for (std::size_t j = 0; j < n; ++j) {
      const bool same = g.group_of[i] == g.group_of[j];
      if (same && !oracle::point_in_ci_tie(d[i].mos, *d[i].ci95, d[j].mos, *d[j].ci95))
        return "group members " + d[i].condition_id + "," + d[j].condition_id + " do not tie";
      if (d[i].mos == d[j].mos && !same) return "equal MOS split across groups";
      if (!same && d[i].mos > d[j].mos) {
        if (t(Eigen::Index(i)) < t(Eigen::Index(j))) return "order not preserved";
        if (!(g.groups[g.group_of[i]].mean_mos > g.groups[g.group_of[j]].mean_mos))
          return "order not strict before rounding";
      }
    }
  }

  // rank safety: equal ranks exactly for co-group members, barring flagged collisions
  const Eigen::VectorXd r = fractional_ranks(t);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t gi = g.group_of[i], gj = g.group_of[j];
      const bool same_rank = r(Eigen::Index(i)) == r(Eigen::Index(j));
      if (gi == gj && !same_rank) return "co-group ranks differ";
      if (gi != gj && same_rank) {
        const auto lo = std::min(gi, gj), hi = std::max(gi, gj);
        bool flagged = true;
        for (std::size_t k = lo; k < hi; ++k)
          flagged = flagged && std::find(g.rounding_collisions.begin(), g.rounding_collisions.end(),
                                         std::pair{k, k + 1}) != g.rounding_collisions.end();
        if (!flagged) return "unflagged rank collision";
      }
    }
  return {};
}

}  // namespace mosrank::test
