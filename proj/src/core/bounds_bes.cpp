#include "bounds_bes.hpp"

#include <algorithm>
#include <cmath>

#include "bounds_core.hpp"
#include "combinatorics.hpp"
#include "errors.hpp"
#include "log_real.hpp"

namespace rdb {
namespace bes {

namespace {
constexpr double kLn2 = 0.6931471805599453;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}  // namespace

BesBounds::BesBounds(double delta, int64_t n, double d) : n_(n) {
    if (n < 1) throw_domain("bes bound: n < 1");
    if (!(delta >= 0.0 && delta < 1.0)) throw_domain("bes bound: need 0 <= delta < 1");
    if (!(d > 0.5 * delta - 1e-15 && d < 1.0 - 0.5 * delta))
        throw_domain("bes bound: need delta/2 < d < 1 - delta/2");
    nd_ = floor_nd(n, d);

    // Erasure-count weights, truncated where the binomial tail drops below
    // 1e-18 of the total. The dropped tail is retained for the achievability
    // side (where assuming it always misses stays an upper bound) and dropped
    // from the converse (which keeps it a lower bound).
    std::vector<double> lw(size_t(n) + 1);
    for (int64_t k = 0; k <= n; ++k) lw[size_t(k)] = log_binom_pmf(n, delta, k);
    double cum = 0.0;
    k_hi_ = n;
    for (int64_t k = 0; k <= n; ++k) {
        cum += std::exp(lw[size_t(k)]);
        if (1.0 - cum < 1e-18) {
            k_hi_ = k;
            break;
        }
    }
    {
        LogSum tail;
        for (int64_t k = k_hi_ + 1; k <= n; ++k) tail.add(lw[size_t(k)]);
        log_tail_ = tail.ln();
    }
    log_weight_k_.assign(lw.begin(), lw.begin() + k_hi_ + 1);

    log_ball_.resize(size_t(k_hi_) + 1);
    for (int64_t k = 0; k <= k_hi_; ++k) {
        int64_t len = n - k;
        auto prefix = log_partial_binom_prefix(len, nd_);
        auto& row = log_ball_[size_t(k)];
        row.resize(size_t(std::min(k, nd_)) + 1);
        for (int64_t j = 0; j < int64_t(row.size()); ++j) {
            int64_t r = nd_ - j;
            double ball;
            if (r >= len) {
                ball = 0.0;  // whole space covered
            } else {
                ball = prefix[size_t(r)] - double(len) * kLn2;
            }
            row[size_t(j)] = ball;
        }
    }
}

double BesBounds::converse_eps(double log_M) const {
    LogSum acc;
    for (int64_t k = 0; k <= k_hi_; ++k) {
        const auto& row = log_ball_[size_t(k)];
        LogSum inner;
        bool any = false;
        for (int64_t j = 0; j <= k; ++j) {
            double lb = j < int64_t(row.size()) ? row[size_t(j)] : kNegInf;
            double t = log_M + lb;
            if (t >= 0.0) continue;  // [1 - M w]^+ = 0
            double lf = std::log(-std::expm1(t));
            inner.add(-double(k) * kLn2 + log_binomial(k, j) + lf);
            any = true;
        }
        if (any) acc.add(log_weight_k_[size_t(k)] + inner.ln());
    }
    return std::min(1.0, std::exp(acc.ln()));
}

double BesBounds::ach_eps(double log_M) const {
    LogSum acc;
    acc.add(log_tail_);  // dropped erasure tail counted as a full miss
    for (int64_t k = 0; k <= k_hi_; ++k) {
        const auto& row = log_ball_[size_t(k)];
        LogSum inner;
        bool any = false;
        for (int64_t j = 0; j <= k; ++j) {
            double lb = j < int64_t(row.size()) ? row[size_t(j)] : kNegInf;
            double lf = log_pow1m(lb, log_M);
            if (std::isinf(lf) && lf < 0) continue;
            inner.add(-double(k) * kLn2 + log_binomial(k, j) + lf);
            any = true;
        }
        if (any) acc.add(log_weight_k_[size_t(k)] + inner.ln());
    }
    return std::min(1.0, std::exp(acc.ln()));
}

}  // namespace bes
}  // namespace rdb
