#pragma once

// Reference computations that deliberately avoid the library's code paths.

#include <cmath>
#include <cstddef>
#include <vector>

namespace mosrank::oracle {

// Rank-difference form 1 - 6*sum(d^2)/(n(n^2-1)) applied to given rank vectors.
inline double classical_srcc(const std::vector<double>& ranks_a, const std::vector<double>& ranks_b) {
  const double n = static_cast<double>(ranks_a.size());
  double sum_d2 = 0.0;
  for (std::size_t i = 0; i < ranks_a.size(); ++i) {
    const double d = ranks_a[i] - ranks_b[i];
    sum_d2 += d * d;
  }
  return 1.0 - 6.0 * sum_d2 / (n * (n * n - 1.0));
}

// O(n^2) ranks: 1 + #smaller + (#equal - 1)/2.
inline std::vector<double> naive_ranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double smaller = 0, equal = 0;
    for (double x : v) {
      if (x < v[i]) smaller += 1;
      if (x == v[i]) equal += 1;
    }
    r[i] = 1.0 + smaller + (equal - 1.0) / 2.0;
  }
  return r;
}

inline double naive_pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i] / n;
    mb += b[i] / n;
  }
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

// "At least one MOS lies inside the other's CI", as interval containment.
inline bool point_in_ci_tie(double mos_a, double ci_a, double mos_b, double ci_b, double tol = 1e-9) {
  const bool b_in_a = mos_b >= mos_a - ci_a - tol && mos_b <= mos_a + ci_a + tol;
  const bool a_in_b = mos_a >= mos_b - ci_b - tol && mos_a <= mos_b + ci_b + tol;
  return b_in_a || a_in_b;
}

inline bool has_two_fraction_digits(double v) {
  const double scaled = v * 100.0;
  return std::abs(scaled - std::round(scaled)) < 1e-6;
}

// 97.5th percentiles of Student's t, solved to 30 digits with mpmath
// (dof 1 is tan(0.475*pi)).
inline constexpr double kT975Dof1 = 12.7062047361747046460216799788;
inline constexpr double kT975Dof3 = 3.18244630528370843588399788748;
inline constexpr double kT975Dof4 = 2.77644510519779348979096219549;
inline constexpr double kZ975 = 1.959963984540054;

}  // namespace mosrank::oracle
