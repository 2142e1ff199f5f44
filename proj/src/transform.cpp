#include "mosrank/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mosrank/error.hpp"

namespace mosrank {

namespace {

double require_ci(const MosEstimate& e) {
  if (!e.ci95) throw InvalidInput("missing ci95 for '" + e.condition_id + "'");
  return *e.ci95;
}

// Indices into the dataset; all members share one MOS value.
using Block = std::vector<std::size_t>;

class Grouper {
 public:
  explicit Grouper(const Dataset& d) : d_(d) {}

  bool ties_all(const Block& block, const std::vector<std::size_t>& members) const {
    for (std::size_t a : block)
      for (std::size_t b : members)
        if (!is_tied_pair(d_[a], d_[b])) return false;
    return true;
  }

  bool ties_all(const Block& block, const std::vector<std::size_t>& members,
                const Block& extra) const {
    return ties_all(block, members) && ties_all(block, extra);
  }

  double mos(const Block& b) const { return d_[b.front()].mos; }
  double mos(std::size_t i) const { return d_[i].mos; }

 private:
  const Dataset& d_;
};

}  // namespace

bool is_tied_pair(const MosEstimate& a, const MosEstimate& b) {
  const double reach = std::max(require_ci(a), require_ci(b));
  return std::abs(a.mos - b.mos) <= reach + kTieTolerance;
}

double round_two_digits(double value) {
  const double scaled = value * 100.0;
  const double whole = std::trunc(scaled);
  double rounded = std::round(scaled);
  // 4.445 is stored as 444.49999...; treat representation-level halves as halves
  if (std::abs(std::abs(scaled - whole) - 0.5) < 1e-7) rounded = whole + std::copysign(1.0, scaled);
  return rounded / 100.0;
}

Eigen::VectorXd TieGrouping::values() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(group_of.size()));
  for (std::size_t i = 0; i < group_of.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = groups[group_of[i]].transformed_value;
  return v;
}

TieGrouping build_tie_groups(const Dataset& dataset) {
  if (dataset.empty()) throw InvalidInput("transform needs at least 1 condition");
  for (const auto& e : dataset.entries()) require_ci(e);

  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dataset[a].mos > dataset[b].mos; });

  std::vector<Block> blocks;
  for (std::size_t i : order) {
    if (!blocks.empty() && dataset[blocks.back().front()].mos == dataset[i].mos)
      blocks.back().push_back(i);
    else
      blocks.push_back({i});
  }

  const Grouper g(dataset);
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const Block& block = blocks[b];
    bool join = !groups.empty() && g.ties_all(block, groups.back());

    if (join && b + 1 < blocks.size()) {
      const Block& next = blocks[b + 1];
      const bool ties_next = g.ties_all(next, block);
      const bool next_fits_all = ties_next && g.ties_all(next, groups.back(), block);
      if (ties_next && !next_fits_all) {
        const double to_prev = g.mos(groups.back().back()) - g.mos(block);
        const double to_next = g.mos(block) - g.mos(next);
        if (to_next < to_prev - kTieTolerance) join = false;
      }
    }

    if (!join) groups.emplace_back();
    groups.back().insert(groups.back().end(), block.begin(), block.end());
  }

  TieGrouping out;
  out.group_of.assign(dataset.size(), 0);
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    TieGroup tg;
    tg.members = groups[gi];
    double sum = 0.0;
    for (std::size_t i : tg.members) {
      tg.member_ids.push_back(dataset[i].condition_id);
      sum += dataset[i].mos;
      out.group_of[i] = gi;
    }
    tg.mean_mos = sum / static_cast<double>(tg.members.size());
    tg.transformed_value = round_two_digits(tg.mean_mos);
    if (gi > 0 && out.groups.back().transformed_value == tg.transformed_value)
      out.rounding_collisions.emplace_back(gi - 1, gi);
    out.groups.push_back(std::move(tg));
  }
  return out;
}

Eigen::VectorXd transform_mos(const Dataset& dataset) { return build_tie_groups(dataset).values(); }

std::vector<std::pair<std::size_t, std::size_t>> find_coherence_violations(
    const Dataset& dataset, const TieGrouping& grouping) {
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  for (const auto& group : grouping.groups)
    for (std::size_t a = 0; a < group.members.size(); ++a)
      for (std::size_t b = a + 1; b < group.members.size(); ++b)
        if (!is_tied_pair(dataset[group.members[a]], dataset[group.members[b]]))
          bad.emplace_back(group.members[a], group.members[b]);
  return bad;
}

}  // namespace mosrank
