#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace mosrank {

// Closed integer rating scale, ACR 1..5 by default.
struct Scale {
  int lo = 1;
  int hi = 5;

  bool contains(double v) const { return v >= lo && v <= hi; }
  friend bool operator==(const Scale&, const Scale&) = default;
};

struct OpinionVotes {
  std::string condition_id;
  std::vector<int> votes;
};

// One condition's MOS with its 95% CI half-width. n and sd are absent when the
// estimate was ingested precomputed.
struct MosEstimate {
  std::string condition_id;
  double mos = 0.0;
  std::optional<double> ci95;
  std::optional<int> n;
  std::optional<double> sd;
  // Set when n == 1: sd and ci95 are defined as 0 because the t quantile has no
  // degrees of freedom.
  bool single_vote = false;

  friend bool operator==(const MosEstimate&, const MosEstimate&) = default;
};

// Ordered collection of estimates with unique condition ids.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<MosEstimate> entries, Scale scale = {});

  const std::vector<MosEstimate>& entries() const { return entries_; }
  const Scale& scale() const { return scale_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const MosEstimate& operator[](std::size_t i) const { return entries_[i]; }

  Eigen::VectorXd mos_values() const;
  // Throws InvalidInput naming the first entry without a CI.
  Eigen::VectorXd ci95_values() const;
  bool has_all_ci() const;
  std::optional<std::size_t> find(const std::string& condition_id) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<MosEstimate> entries_;
  Scale scale_;
};

}  // namespace mosrank
