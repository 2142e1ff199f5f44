#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "mosrank/types.hpp"

namespace mosrank {

// Which vectors are transformed before the transformed-pipeline SRCC.
enum class TransformSide { both, noisy_only };

// CI attached to each noisy MOS when it is transformed.
enum class NoisyCiPolicy { original, zero };

struct NoiseStudyConfig {
  std::vector<double> sigma_grid;
  int runs_per_sigma = 1000;
  std::uint64_t seed = 0;
  bool clamp_to_scale = false;
  std::optional<std::size_t> top_k;
  TransformSide transform_side = TransformSide::both;
  NoisyCiPolicy noisy_ci = NoisyCiPolicy::original;
  // Worker threads; results do not depend on it. 0 means hardware concurrency.
  unsigned threads = 1;

  // Throws InvalidInput on an empty, negative or non-ascending grid or
  // runs_per_sigma < 1.
  void validate() const;
};

struct NoiseStudyRecord {
  double sigma = 0.0;
  // max over non-degenerate runs of 1 - srcc; 0 when every run was degenerate
  double max_delta_raw = 0.0;
  double max_delta_transformed = 0.0;
  int degenerate_runs_raw = 0;
  int degenerate_runs_transformed = 0;
  // max over runs where both pipelines were defined of |srcc_raw - srcc_transformed|
  double max_raw_vs_transformed = 0.0;

  friend bool operator==(const NoiseStudyRecord&, const NoiseStudyRecord&) = default;
};

struct NoiseStudyResult {
  std::vector<NoiseStudyRecord> records;  // one per sigma, grid order
  std::size_t conditions = 0;  // after top_k restriction

  friend bool operator==(const NoiseStudyResult&, const NoiseStudyResult&) = default;
};

// Seed for one (sigma, run) cell: a SplitMix64 finalizer over the packed cell
// index, keyed by the master seed. Injective in (sigma_index, run_index) for
// indices below 2^32.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t sigma_index,
                          std::uint64_t run_index);

// true_mos + N(0, sigma^2) i.i.d., drawn from a generator seeded with run_seed;
// optionally clamped to the scale.
Eigen::VectorXd draw_noisy_mos(const Eigen::VectorXd& true_mos, double sigma,
                               std::uint64_t run_seed, const std::optional<Scale>& clamp = {});

// The k highest-MOS entries, in descending MOS order (ties by ingestion order).
Dataset top_k_conditions(const Dataset& dataset, std::size_t k);

NoiseStudyResult run_noise_study(const Dataset& dataset, const NoiseStudyConfig& config);

}  // namespace mosrank
