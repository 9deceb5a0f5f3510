#include "combinatorics.hpp"

#include <algorithm>
#include <cmath>

namespace rdb {

double log_binomial(int64_t n, int64_t k) {
    if (n < 0 || k < 0 || k > n) throw_domain("log_binomial: need 0 <= k <= n");
    if (k == 0 || k == n) return 0.0;
    return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
           std::lgamma(double(n - k) + 1.0);
}

double log_multinomial(int64_t n, const std::vector<int64_t>& counts) {
    int64_t total = 0;
    double acc = std::lgamma(double(n) + 1.0);
    for (int64_t c : counts) {
        if (c < 0) throw_domain("log_multinomial: negative count");
        total += c;
        acc -= std::lgamma(double(c) + 1.0);
    }
    if (total != n) throw_domain("log_multinomial: counts do not sum to n");
    return acc;
}

LogReal log_partial_binom_sum(int64_t n, int64_t k) {
    if (n < 0) throw_domain("log_partial_binom_sum: n < 0");
    if (k < 0) return LogReal::zero();
    if (k >= n) return LogReal::from_ln(double(n) * std::log(2.0));
    LogSum acc;
    for (int64_t j = 0; j <= k; ++j) acc.add(log_binomial(n, j));
    return acc.log_real();
}

std::vector<double> log_partial_binom_prefix(int64_t n, int64_t k_max) {
    if (n < 0) throw_domain("log_partial_binom_prefix: n < 0");
    k_max = std::min(k_max, n);
    std::vector<double> out;
    if (k_max < 0) return out;
    out.reserve(size_t(k_max) + 1);
    LogSum acc;
    for (int64_t j = 0; j <= k_max; ++j) {
        acc.add(log_binomial(n, j));
        out.push_back(acc.ln());
    }
    return out;
}

LogReal log_hamming_ball(int64_t n, int64_t k, int m) {
    if (m < 2 || n < 0) throw_domain("log_hamming_ball: need m >= 2, n >= 0");
    if (k < 0) return LogReal::zero();
    if (k >= n) return LogReal::from_ln(double(n) * std::log(double(m)));
    const double lnm1 = std::log(double(m - 1));
    LogSum acc;
    for (int64_t j = 0; j <= k; ++j) acc.add(log_binomial(n, j) + double(j) * lnm1);
    return acc.log_real();
}

std::vector<double> log_hamming_ball_prefix(int64_t n, int64_t k_max, int m) {
    if (m < 2 || n < 0) throw_domain("log_hamming_ball_prefix: need m >= 2, n >= 0");
    k_max = std::min(k_max, n);
    std::vector<double> out;
    if (k_max < 0) return out;
    out.reserve(size_t(k_max) + 1);
    const double lnm1 = std::log(double(m - 1));
    LogSum acc;
    for (int64_t j = 0; j <= k_max; ++j) {
        acc.add(log_binomial(n, j) + double(j) * lnm1);
        out.push_back(acc.ln());
    }
    return out;
}

double log_binom_pmf(int64_t n, double p, int64_t k) {
    if (p < 0.0 || p > 1.0) throw_domain("log_binom_pmf: p outside [0,1]");
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    if (p == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    if (p == 1.0) return k == n ? 0.0 : -std::numeric_limits<double>::infinity();
    return log_binomial(n, k) + double(k) * std::log(p) + double(n - k) * std::log1p(-p);
}

double binom_cdf(int64_t n, double p, int64_t r) {
    if (p < 0.0 || p > 1.0) throw_domain("binom_cdf: p outside [0,1]");
    if (r < 0) return 0.0;
    if (r >= n) return 1.0;
    LogSum acc;
    for (int64_t k = 0; k <= r; ++k) acc.add(log_binom_pmf(n, p, k));
    return std::min(1.0, std::exp(acc.ln()));
}

double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log(x) - (1.0 - x) * std::log1p(-x);
}

int64_t floor_nd(int64_t n, double d) {
    return int64_t(std::floor(double(n) * d + 1e-12));
}

}  // namespace rdb
