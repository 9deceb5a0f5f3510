#ifndef RDB_CORE_COMBINATORICS_HPP
#define RDB_CORE_COMBINATORICS_HPP

#include <cstdint>
#include <vector>

#include "log_real.hpp"

namespace rdb {

// ln C(n,k). Requires 0 <= k <= n.
double log_binomial(int64_t n, int64_t k);

// ln n! / (c_1! ... c_m!) for counts summing to n.
double log_multinomial(int64_t n, const std::vector<int64_t>& counts);

// ln sum_{j=0}^{k} C(n,j); zero for k < 0, full 2^n mass for k > n.
LogReal log_partial_binom_sum(int64_t n, int64_t k);

// Prefix table of the partial binomial sums: out[r] = ln sum_{j<=r} C(n,j),
// r = 0..k_max (k_max clamped to n).
std::vector<double> log_partial_binom_prefix(int64_t n, int64_t k_max);

// ln sum_{j=0}^{k} C(n,j)(m-1)^j -- the number of m-ary strings within
// Hamming distance k of a fixed string. Zero for k < 0, m^n for k >= n.
LogReal log_hamming_ball(int64_t n, int64_t k, int m);

std::vector<double> log_hamming_ball_prefix(int64_t n, int64_t k_max, int m);

// P[Bin(n,p) <= r], summed exactly in the log domain.
double binom_cdf(int64_t n, double p, int64_t r);

// ln P[Bin(n,p) = k]
double log_binom_pmf(int64_t n, double p, int64_t k);

// Binary entropy in nats; h(0) = h(1) = 0.
double binary_entropy(double x);

// floor(n*d) with a small nudge absorbing binary representation error of d.
int64_t floor_nd(int64_t n, double d);

}  // namespace rdb

#endif  // RDB_CORE_COMBINATORICS_HPP
