#pragma once

#include <span>

#include "mosrank/types.hpp"

namespace mosrank {

enum class CiMethod { student_t, normal };

// 97.5th percentile used for a two-sided 95% interval; dof is ignored for the
// normal method.
double ci95_quantile(CiMethod method, int dof);

// Mean, sample SD (n-1 denominator) and 95% CI half-width q*sd/sqrt(n).
// A single vote yields sd = ci95 = 0 and sets MosEstimate::single_vote.
MosEstimate compute_mos_estimate(const OpinionVotes& votes, CiMethod method = CiMethod::student_t,
                                 Scale scale = {});

}  // namespace mosrank
