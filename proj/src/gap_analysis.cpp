#include "mosrank/gap_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mosrank/error.hpp"

namespace mosrank {

GapReport gap_analysis(const Dataset& dataset) {
  if (dataset.size() < 2) throw InvalidInput("gap analysis needs at least 2 conditions");
  const Eigen::VectorXd ci = dataset.ci95_values();

  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dataset[a].mos > dataset[b].mos; });

  GapReport report;
  for (std::size_t i : order) report.ci95.push_back(ci(static_cast<Eigen::Index>(i)));

  std::size_t within = 0;
  for (std::size_t p = 0; p + 1 < order.size(); ++p) {
    const auto& hi = dataset[order[p]];
    const auto& lo = dataset[order[p + 1]];
    ConsecutiveGap g;
    g.upper_id = hi.condition_id;
    g.lower_id = lo.condition_id;
    g.gap = std::abs(hi.mos - lo.mos);
    g.ci_upper = *hi.ci95;
    g.ci_lower = *lo.ci95;
    g.within_ci = g.gap < std::max(g.ci_upper, g.ci_lower);
    within += g.within_ci ? 1 : 0;
    report.pairs.push_back(std::move(g));
  }
  report.fraction_within_ci =
      static_cast<double>(within) / static_cast<double>(report.pairs.size());
  return report;
}

}  // namespace mosrank
