#ifndef RDB_CORE_BOUNDS_CORE_HPP
#define RDB_CORE_BOUNDS_CORE_HPP

#include <cstdint>
#include <vector>

#include "log_real.hpp"
#include "sum_dist.hpp"

namespace rdb {

// Distribution of the random ball mass W = P_Y(B_d(X)) as (ln w, ln prob)
// atoms. A ln w of exactly 0 means perfect coverage of that source atom.
struct BallMassDist {
    std::vector<double> log_w;
    std::vector<double> log_prob;
};

// ln((1-w)^M) and ln(e^{-Mw}) with both arguments carried as logs; M = 0 is
// encoded by log_M = -inf.
double log_pow1m(double log_w, double log_M);
double log_exp_neg_mw(double log_w, double log_M);

// Tilted-information converse: every M-codeword code has excess probability
// at least sup_{gamma>=0} { P[S >= log M + gamma] - e^{-gamma} }, with S the
// n-letter tilted-information sum. The survival function is a step function,
// so the supremum is attained at an atom boundary; all jump candidates are
// evaluated exactly. Result clamped to [0,1].
double converse_tilted(const SumDist& sum, double log_M);

// Exact ensemble-average excess probability of M iid random codewords:
// E[(1 - W)^M].
double rc_exact(const BallMassDist& w, double log_M);

// Numerically friendlier relaxation E[e^{-M W}] >= rc_exact.
double rc_relaxed(const BallMassDist& w, double log_M);

// Hypothesis-testing converse frame: log M >= ln beta - ln sup-ball-mass.
// Inputs are computed by the per-source callers.
double ht_converse(LogReal log_beta, LogReal log_max_ball);

// Per-letter joint atom for the classical random-coding achievability:
// information density (nats), distortion value, and probability.
struct JointAtom {
    double info_nats;
    double dist_value;
    double prob;
};

// Classical achievability for a fixed per-letter test channel:
//   eps <= P[sum dist > n d] + inf_{gamma>0} { P[sum info > log M - gamma] + e^{-e^gamma} }.
// Both sums are exact univariate convolutions; gamma is optimized exactly
// over the jump candidates of the info-sum survival function.
double shannon_ach(const std::vector<JointAtom>& per_letter, int64_t n, double d, double log_M,
                   double budget = 1e7);

}  // namespace rdb

#endif  // RDB_CORE_BOUNDS_CORE_HPP
