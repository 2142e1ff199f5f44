#include <cmath>
#include <unordered_set>

#include "mosrank/error.hpp"
#include "mosrank/types.hpp"

namespace mosrank {

Dataset::Dataset(std::vector<MosEstimate> entries, Scale scale)
    : entries_(std::move(entries)), scale_(scale) {
  if (scale_.lo >= scale_.hi) throw InvalidInput("scale: lo must be below hi");
  std::unordered_set<std::string> seen;
  for (const auto& e : entries_) {
    if (!seen.insert(e.condition_id).second)
      throw InvalidInput("duplicate condition id '" + e.condition_id + "'");
    if (!std::isfinite(e.mos)) throw InvalidInput("non-finite MOS for '" + e.condition_id + "'");
    if (e.ci95 && !(*e.ci95 >= 0.0))
      throw InvalidInput("negative or non-finite ci95 for '" + e.condition_id + "'");
    if (e.sd && !(*e.sd >= 0.0)) throw InvalidInput("negative sd for '" + e.condition_id + "'");
    if (e.n && *e.n < 1) throw InvalidInput("vote count below 1 for '" + e.condition_id + "'");
  }
}

Eigen::VectorXd Dataset::mos_values() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(entries_.size()));
  for (std::size_t i = 0; i < entries_.size(); ++i) v(static_cast<Eigen::Index>(i)) = entries_[i].mos;
  return v;
}

Eigen::VectorXd Dataset::ci95_values() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(entries_.size()));
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!entries_[i].ci95) throw InvalidInput("missing ci95 for '" + entries_[i].condition_id + "'");
    v(static_cast<Eigen::Index>(i)) = *entries_[i].ci95;
  }
  return v;
}

bool Dataset::has_all_ci() const {
  for (const auto& e : entries_)
    if (!e.ci95) return false;
  return true;
}

std::optional<std::size_t> Dataset::find(const std::string& condition_id) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].condition_id == condition_id) return i;
  return std::nullopt;
}

}  // namespace mosrank
