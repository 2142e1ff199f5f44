#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Core>

#include "mosrank/error.hpp"

namespace mosrank {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Ascending 1-based ranks. Exactly equal values share the mean of the ranks
// they span, so the ranks always sum to n(n+1)/2.
template <typename Derived>
Vector<typename Derived::Scalar> fractional_ranks(const Eigen::DenseBase<Derived>& values) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = values.size();
  if (n == 0) throw InvalidInput("fractional_ranks: empty input");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return values(a) < values(b);
  });

  Vector<Scalar> ranks(n);
  std::size_t first = 0;
  while (first < order.size()) {
    std::size_t last = first;
    while (last + 1 < order.size() && values(order[last + 1]) == values(order[first])) ++last;
    // positions first..last (0-based) hold ranks first+1..last+1
    const Scalar shared = Scalar(first + last + 2) / Scalar(2);
    for (std::size_t p = first; p <= last; ++p) ranks(order[p]) = shared;
    first = last + 1;
  }
  return ranks;
}

// Pearson product-moment correlation. Throws DegenerateCorrelation when
// either argument has zero variance.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar pearson(const Eigen::MatrixBase<DerivedA>& a,
                                  const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  if (a.size() != b.size()) throw InvalidInput("pearson: length mismatch");
  if (a.size() < 2) throw InvalidInput("pearson: need at least 2 observations");

  const Vector<Scalar> ca = a.array() - a.mean();
  const Vector<Scalar> cb = b.array() - b.mean();
  const Scalar saa = ca.squaredNorm();
  const Scalar sbb = cb.squaredNorm();
  if (!(saa > Scalar(0)) || !(sbb > Scalar(0))) throw DegenerateCorrelation();
  const Scalar r = ca.dot(cb) / std::sqrt(saa * sbb);
  return std::clamp(r, Scalar(-1), Scalar(1));
}

// Spearman's rank correlation: Pearson on the fractional ranks of a and b.
// Exact with ties; equals 1 - 6*sum(d^2)/(n(n^2-1)) when there are none.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar srcc(const Eigen::MatrixBase<DerivedA>& a,
                               const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) throw InvalidInput("srcc: length mismatch");
  if (a.size() < 2) throw InvalidInput("srcc: need at least 2 observations");
  if (!a.allFinite() || !b.allFinite()) throw InvalidInput("srcc: non-finite value");
  return pearson(fractional_ranks(a), fractional_ranks(b));
}

}  // namespace mosrank
