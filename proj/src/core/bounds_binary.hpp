#ifndef RDB_CORE_BOUNDS_BINARY_HPP
#define RDB_CORE_BOUNDS_BINARY_HPP

#include <cstdint>
#include <vector>

#include "bounds_core.hpp"

namespace rdb {
namespace binary {

// Equiprobable source, sphere-covering converse: eps >= 1 - M 2^{-n} <n|floor(nd)>.
double ebms_converse_eps(int64_t n, double d, double log_M);
// Direct inversion at excess probability eps.
double ebms_converse_log_m(int64_t n, double d, double eps);

// Equiprobable source, exact random coding: eps <= (1 - 2^{-n} <n|floor(nd)>)^M.
double ebms_ach_eps(int64_t n, double d, double log_M);
double ebms_ach_log_m(int64_t n, double d, double eps);

// Tilted-information converse for bias p; delegates to the generic engine
// over the binomial-weight sum distribution.
double bms_converse_tilted_eps(double p, int64_t n, double d, double log_M);

// Hypothesis-testing converse for bias p (optimal test against the
// equiprobable measure, resolved through the Hamming-weight classes).
double bms_converse_ht_log_m(double p, int64_t n, double d, double eps);

// Random coding with the iid rate-distortion-optimal output marginal;
// per-weight ball-mass lower bounds are cached at construction.
class BmsRcAch {
  public:
    BmsRcAch(double p, int64_t n, double d);
    double eps(double log_M) const;
    int64_t n() const { return n_; }

  private:
    int64_t n_;
    std::vector<double> log_weight_;  // P[weight = k]
    std::vector<double> log_ball_;    // ball-mass lower bound given weight k
};

// Constant-composition codebook variant.
class BmsCcAch {
  public:
    BmsCcAch(double p, int64_t n, double d);
    double eps(double log_M) const;

  private:
    int64_t n_;
    std::vector<double> log_weight_;
    std::vector<double> log_ball_;
};

// Classical random-coding achievability evaluated over a family of
// per-letter test channels (design distortion d' <= d), reporting the best.
class BmsShannonAch {
  public:
    BmsShannonAch(double p, int64_t n, double d, int channel_grid = 24);
    double eps(double log_M) const;

    // One test channel: X = Y xor flip, Y ~ Bernoulli(q'), flip ~
    // Bernoulli(d'). The information-density sum decomposes as
    // c0 + alpha*K + beta*N with K = #flips and N = #ones in X;
    // N | K=k is Bin(n-k, q') + Bin(k, 1-q').
    struct Channel {
        double p1 = 1.0;  // P[distortion sum > n d]
        double c0 = 0.0, alpha = 0.0, beta = 0.0;
        int64_t klo = 0, khi = 0;
        double k_dropped = 0.0;                  // truncated K mass
        std::vector<double> pk;                  // P[K=k], k in [klo,khi]
        std::vector<double> k_prefix;            // P[K <= k] (p = 1/2 path)
        std::vector<std::vector<double>> nsurv;  // per k: P[N >= m]
        bool flat = false;                       // p == 1/2: info sum depends on K only

        double info_tail(double T, int64_t n) const;
    };

  private:
    int64_t n_;
    std::vector<Channel> channels_;
};

}  // namespace binary
}  // namespace rdb

#endif  // RDB_CORE_BOUNDS_BINARY_HPP
