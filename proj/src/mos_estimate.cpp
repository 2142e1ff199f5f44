#include "mosrank/mos_estimate.hpp"

#include <cmath>
#include <numeric>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "mosrank/error.hpp"

namespace mosrank {

double ci95_quantile(CiMethod method, int dof) {
  if (method == CiMethod::normal) return boost::math::quantile(boost::math::normal_distribution<>{}, 0.975);
  if (dof < 1) throw InvalidInput("t quantile needs at least 1 degree of freedom");
  return boost::math::quantile(boost::math::students_t_distribution<>(dof), 0.975);
}

MosEstimate compute_mos_estimate(const OpinionVotes& votes, CiMethod method, Scale scale) {
  if (votes.votes.empty())
    throw InvalidInput("no votes for condition '" + votes.condition_id + "'");
  for (int v : votes.votes) {
    if (v < scale.lo || v > scale.hi)
      throw InvalidInput("vote " + std::to_string(v) + " for '" + votes.condition_id +
                         "' outside scale [" + std::to_string(scale.lo) + ", " +
                         std::to_string(scale.hi) + "]");
  }

  const auto n = static_cast<int>(votes.votes.size());
  const double mean =
      std::accumulate(votes.votes.begin(), votes.votes.end(), 0.0) / static_cast<double>(n);

  MosEstimate est;
  est.condition_id = votes.condition_id;
  est.mos = mean;
  est.n = n;
  if (n == 1) {
    est.sd = 0.0;
    est.ci95 = 0.0;
    est.single_vote = true;
    return est;
  }

  double ss = 0.0;
  for (int v : votes.votes) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  est.sd = sd;
  est.ci95 = ci95_quantile(method, n - 1) * sd / std::sqrt(static_cast<double>(n));
  return est;
}

}  // namespace mosrank
