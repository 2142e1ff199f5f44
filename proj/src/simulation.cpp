#include "mosrank/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "mosrank/error.hpp"
#include "mosrank/ranks.hpp"
#include "mosrank/transform.hpp"

namespace mosrank {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct CellOutcome {
  std::optional<double> srcc_raw;
  std::optional<double> srcc_transformed;
};

std::optional<double> try_srcc(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  try {
    return srcc(a, b);
  } catch (const DegenerateCorrelation&) {
    return std::nullopt;
  }
}

}  // namespace

void NoiseStudyConfig::validate() const {
  if (sigma_grid.empty()) throw InvalidInput("sigma grid is empty");
  for (std::size_t i = 0; i < sigma_grid.size(); ++i) {
    if (!(sigma_grid[i] >= 0.0) || !std::isfinite(sigma_grid[i]))
      throw InvalidInput("sigma values must be finite and non-negative");
    if (i > 0 && !(sigma_grid[i] > sigma_grid[i - 1]))
      throw InvalidInput("sigma grid must be strictly ascending");
  }
  if (runs_per_sigma < 1) throw InvalidInput("runs per sigma must be at least 1");
  if (top_k && *top_k == 0) throw InvalidInput("top-k must be positive");
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t sigma_index,
                          std::uint64_t run_index) {
  if (sigma_index >> 32 || run_index >> 32) throw InvalidInput("derive_seed: index exceeds 2^32");
  const std::uint64_t cell = (sigma_index << 32) | run_index;
  return mix64(mix64(cell + kGoldenGamma) ^ master_seed);
}

Eigen::VectorXd draw_noisy_mos(const Eigen::VectorXd& true_mos, double sigma,
                               std::uint64_t run_seed, const std::optional<Scale>& clamp) {
  std::mt19937_64 engine(run_seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd noisy(true_mos.size());
  for (Eigen::Index i = 0; i < true_mos.size(); ++i) noisy(i) = true_mos(i) + sigma * unit(engine);
  if (clamp) noisy = noisy.cwiseMax(double(clamp->lo)).cwiseMin(double(clamp->hi));
  return noisy;
}

Dataset top_k_conditions(const Dataset& dataset, std::size_t k) {
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dataset[a].mos > dataset[b].mos; });
  order.resize(std::min(k, order.size()));
  std::vector<MosEstimate> kept;
  for (std::size_t i : order) kept.push_back(dataset[i]);
  return Dataset(std::move(kept), dataset.scale());
}

NoiseStudyResult run_noise_study(const Dataset& dataset, const NoiseStudyConfig& config) {
  config.validate();
  const Dataset working = config.top_k ? top_k_conditions(dataset, *config.top_k) : dataset;
  if (working.size() < 3) throw InvalidInput("noise study needs at least 3 conditions");

  const Eigen::VectorXd true_mos = working.mos_values();
  const Eigen::VectorXd ci = working.ci95_values();
  const Eigen::VectorXd true_reference =
      config.transform_side == TransformSide::both ? transform_mos(working) : true_mos;
  const std::optional<Scale> clamp =
      config.clamp_to_scale ? std::optional<Scale>(working.scale()) : std::nullopt;

  const std::size_t n_sigma = config.sigma_grid.size();
  const auto n_runs = static_cast<std::size_t>(config.runs_per_sigma);
  const std::size_t n_cells = n_sigma * n_runs;
  std::vector<CellOutcome> outcomes(n_cells);

  auto run_cell = [&](std::size_t cell) {
    const std::size_t s = cell / n_runs;
    const std::size_t r = cell % n_runs;
    const Eigen::VectorXd noisy =
        draw_noisy_mos(true_mos, config.sigma_grid[s], derive_seed(config.seed, s, r), clamp);

    std::vector<MosEstimate> entries = working.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      entries[i].mos = noisy(static_cast<Eigen::Index>(i));
      entries[i].ci95 = config.noisy_ci == NoisyCiPolicy::original ? ci(static_cast<Eigen::Index>(i)) : 0.0;
    }
    const Dataset noisy_set(std::move(entries), working.scale());

    outcomes[cell].srcc_raw = try_srcc(true_mos, noisy);
    outcomes[cell].srcc_transformed = try_srcc(true_reference, transform_mos(noisy_set));
  };

  unsigned threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n_cells, 1))));

  if (threads == 1) {
    for (std::size_t c = 0; c < n_cells; ++c) run_cell(c);
  } else {
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t c = t; c < n_cells; c += threads) run_cell(c);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  NoiseStudyResult result;
  result.conditions = working.size();
  for (std::size_t s = 0; s < n_sigma; ++s) {
    NoiseStudyRecord rec;
    rec.sigma = config.sigma_grid[s];
    for (std::size_t r = 0; r < n_runs; ++r) {
      const CellOutcome& o = outcomes[s * n_runs + r];
      if (o.srcc_raw)
        rec.max_delta_raw = std::max(rec.max_delta_raw, 1.0 - *o.srcc_raw);
      else
        ++rec.degenerate_runs_raw;
      if (o.srcc_transformed)
        rec.max_delta_transformed = std::max(rec.max_delta_transformed, 1.0 - *o.srcc_transformed);
      else
        ++rec.degenerate_runs_transformed;
      if (o.srcc_raw && o.srcc_transformed)
        rec.max_raw_vs_transformed =
            std::max(rec.max_raw_vs_transformed, std::abs(*o.srcc_raw - *o.srcc_transformed));
    }
    result.records.push_back(rec);
  }
  return result;
}

}  // namespace mosrank
