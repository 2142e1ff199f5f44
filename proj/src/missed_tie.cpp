#include "mosrank/missed_tie.hpp"

#include <cmath>
#include <string>

#include "mosrank/error.hpp"

namespace mosrank {

namespace {

double spearman_norm(int n) {
  const double nn = n;
  return 6.0 / (nn * (nn * nn - 1.0));
}

}  // namespace

double delta_rho_missed_tie(int n, double rank_a_i, double rank_a_j, int k) {
  if (n < 2) throw InvalidInput("delta_rho_missed_tie: n must be at least 2");
  if (k < 1 || k > n - 1)
    throw InvalidInput("delta_rho_missed_tie: k must lie in [1, " + std::to_string(n - 1) + "]");
  for (double r : {rank_a_i, rank_a_j}) {
    if (!(r >= 1.0 && r <= n)) throw InvalidInput("delta_rho_missed_tie: rank outside [1, n]");
  }

  const double d_i = rank_a_i - k;
  const double d_j = rank_a_j - (k + 1);
  const double tied_i = rank_a_i - (k + 0.5);
  const double tied_j = rank_a_j - (k + 0.5);
  return std::abs(spearman_norm(n) *
                  (d_i * d_i + d_j * d_j - tied_i * tied_i - tied_j * tied_j));
}

double max_delta_rho(int n, int m) {
  if (n < 2) throw InvalidInput("max_delta_rho: n must be at least 2");
  if (m < 0 || m > n - 1)
    throw InvalidInput("max_delta_rho: m must lie in [0, " + std::to_string(n - 1) + "]");
  return spearman_norm(n) * m * (n - m - 0.5);
}

}  // namespace mosrank
