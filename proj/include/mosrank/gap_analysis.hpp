#pragma once

#include <string>
#include <vector>

#include "mosrank/types.hpp"

namespace mosrank {

struct ConsecutiveGap {
  std::string upper_id;
  std::string lower_id;
  double gap = 0.0;
  double ci_upper = 0.0;
  double ci_lower = 0.0;
  bool within_ci = false;  // gap < max(ci_upper, ci_lower)
};

struct GapReport {
  // Pairs of neighbours in descending-MOS order.
  std::vector<ConsecutiveGap> pairs;
  // CI half-widths in the same descending order.
  std::vector<double> ci95;
  double fraction_within_ci = 0.0;
};

GapReport gap_analysis(const Dataset& dataset);

}  // namespace mosrank
