#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "mosrank/types.hpp"

namespace mosrank {

// Slack on the inclusive tie boundary. MOS and CI values are short decimals,
// so a difference like 4.5 - 4.35 must compare equal to 0.15.
inline constexpr double kTieTolerance = 1e-9;

// True iff at least one MOS lies inside the other's 95% CI, i.e.
// |a.mos - b.mos| <= max(a.ci95, b.ci95). Throws InvalidInput on a missing CI.
bool is_tied_pair(const MosEstimate& a, const MosEstimate& b);

// Half away from zero at two fraction digits.
double round_two_digits(double value);

struct TieGroup {
  std::vector<std::size_t> members;  // dataset entry indices, descending MOS
  std::vector<std::string> member_ids;
  double mean_mos = 0.0;
  double transformed_value = 0.0;  // mean_mos rounded to two digits
};

struct TieGrouping {
  std::vector<TieGroup> groups;  // descending by transformed_value
  std::vector<std::size_t> group_of;  // per dataset entry
  // Adjacent group pairs whose rounded values coincide; they stay separate
  // groups but will share a rank downstream.
  std::vector<std::pair<std::size_t, std::size_t>> rounding_collisions;

  // Transformed value per dataset entry, in dataset order.
  Eigen::VectorXd values() const;
};

// Partition the conditions into CI-based tie groups.
//
// Entries are visited in descending MOS order (equal MOS keeps ingestion
// order), and runs of exactly equal MOS move as one block so they always share
// a group. A block joins the open group only if it ties with every member.
// When it could join the open group but the next block also ties with it and
// cannot join them all together, the block goes with whichever neighbour is
// closer in MOS; equidistance favours the open (higher) group.
TieGrouping build_tie_groups(const Dataset& dataset);

// Transformed MOS per entry, aligned with dataset order.
Eigen::VectorXd transform_mos(const Dataset& dataset);

// Pairs (i, j) of entries sharing a group that fail is_tied_pair. Empty for
// any grouping produced by build_tie_groups.
std::vector<std::pair<std::size_t, std::size_t>> find_coherence_violations(
    const Dataset& dataset, const TieGrouping& grouping);

}  // namespace mosrank
