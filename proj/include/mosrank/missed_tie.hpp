#pragma once

namespace mosrank {

// Absolute change of the rank-difference Spearman coefficient when items i and
// j, ranked k and k+1 in B, are instead treated as a tie sharing rank k+0.5.
// rank_a_i and rank_a_j are the ranks of the same two items in A.
double delta_rho_missed_tie(int n, double rank_a_i, double rank_a_j, int k);

// Upper bound 6m(n-m-0.5)/(n(n^2-1)) on the change caused by m missed ties
// among n conditions.
double max_delta_rho(int n, int m);

}  // namespace mosrank
