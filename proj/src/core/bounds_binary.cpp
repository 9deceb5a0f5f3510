#include "bounds_binary.hpp"

#include <algorithm>
#include <cmath>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "optimize.hpp"
#include "source_model.hpp"
#include "sum_dist.hpp"

namespace rdb {
namespace binary {

namespace {
constexpr double kLn2 = 0.6931471805599453;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_ebms_args(int64_t n, double d) {
    if (n < 1) throw_domain("ebms bound: n < 1");
    if (!(d >= 0.0 && d < 0.5)) throw_domain("ebms bound: need 0 <= d < 1/2");
}

void check_bms_args(double p, int64_t n, double d) {
    if (n < 1) throw_domain("bms bound: n < 1");
    if (!(p > 0.0 && p <= 0.5)) throw_domain("bms bound: need 0 < p <= 1/2");
    if (!(d >= 0.0)) throw_domain("bms bound: d < 0");
    if (d >= p) throw_domain("bms bound: d >= p is the zero-information regime");
}

double log_ball_fraction(int64_t n, double d) {
    return log_partial_binom_sum(n, floor_nd(n, d)).ln - double(n) * kLn2;
}
}  // namespace

double ebms_converse_eps(int64_t n, double d, double log_M) {
    check_ebms_args(n, d);
    double t = log_M + log_ball_fraction(n, d);
    if (t >= 0.0) return 0.0;
    return -std::expm1(t);
}

double ebms_converse_log_m(int64_t n, double d, double eps) {
    check_ebms_args(n, d);
    if (!(eps > 0.0 && eps < 1.0)) throw_domain("ebms_converse: eps outside (0,1)");
    return std::max(0.0, std::log1p(-eps) - log_ball_fraction(n, d));
}

double ebms_ach_eps(int64_t n, double d, double log_M) {
    check_ebms_args(n, d);
    return std::exp(log_pow1m(log_ball_fraction(n, d), log_M));
}

double ebms_ach_log_m(int64_t n, double d, double eps) {
    check_ebms_args(n, d);
    if (!(eps > 0.0 && eps < 1.0)) throw_domain("ebms_ach: eps outside (0,1)");
    double log_w = log_ball_fraction(n, d);
    if (log_w >= -1e-12) return 0.0;  // one codeword covers everything
    double ln_neg_l1p = log_w > -36.0 ? std::log(-std::log1p(-std::exp(log_w)))
                                      : log_w + std::log1p(0.5 * std::exp(log_w));
    return std::max(0.0, std::log(std::log(1.0 / eps)) - ln_neg_l1p);
}

double bms_converse_tilted_eps(double p, int64_t n, double d, double log_M) {
    check_bms_args(p, n, d);
    SourceModel src{Bms{p}};
    SumDist sum = convolve_iid(src.tilted_info_dist(d), n);
    return converse_tilted(sum, log_M);
}

double bms_converse_ht_log_m(double p, int64_t n, double d, double eps) {
    check_bms_args(p, n, d);
    if (!(eps > 0.0 && eps < 1.0)) throw_domain("bms_converse_ht: eps outside (0,1)");
    const double target = 1.0 - eps;

    // Largest weight class with cumulative source mass still <= 1 - eps.
    int64_t r_star = -1;
    double cum = 0.0;
    for (int64_t r = 0; r <= n; ++r) {
        double pr = std::exp(log_binom_pmf(n, p, r));
        if (cum + pr <= target + 1e-14) {
            cum += pr;
            r_star = r;
        } else {
            break;
        }
    }
    double alpha = 0.0;
    if (r_star < n) {
        double pmf_next = std::exp(log_binom_pmf(n, p, r_star + 1));
        if (pmf_next > 0.0) alpha = std::min(1.0, std::max(0.0, (target - cum) / pmf_next));
    }
    double ln_num = log_partial_binom_sum(n, r_star).ln;
    if (alpha > 0.0 && r_star < n)
        ln_num = log_add(ln_num, std::log(alpha) + log_binomial(n, r_star + 1));
    return ln_num - log_partial_binom_sum(n, floor_nd(n, d)).ln;
}

namespace {

// Ball-mass lower bound for a weight-k string under the iid Bernoulli(q)
// output distribution: the count of weight-t strings at distance <= nd,
// restricted to its dominant overlap term.
double log_ball_weighted(int64_t n, int64_t k, double q, double d) {
    const double nd = double(n) * d;
    const double lq = std::log(q), l1q = std::log1p(-q);
    LogSum acc;
    for (int64_t t = 0; t <= n; ++t) {
        if (double(k) < double(t) - nd || double(k) > double(t) + nd) continue;
        double x = 0.5 * (double(t + k) - nd);
        int64_t t0 = std::max<int64_t>(0, int64_t(std::ceil(x)));
        if (t0 > k || t - t0 < 0 || t - t0 > n - k) continue;
        acc.add(log_binomial(k, t0) + log_binomial(n - k, t - t0) + double(t) * lq +
                double(n - t) * l1q);
    }
    return std::min(acc.ln(), 0.0);
}

}  // namespace

BmsRcAch::BmsRcAch(double p, int64_t n, double d) : n_(n) {
    check_bms_args(p, n, d);
    const double q = (p - d) / (1.0 - 2.0 * d);
    log_weight_.resize(size_t(n) + 1);
    log_ball_.resize(size_t(n) + 1);
    for (int64_t k = 0; k <= n; ++k) {
        log_weight_[size_t(k)] = log_binom_pmf(n, p, k);
        log_ball_[size_t(k)] = log_ball_weighted(n, k, q, d);
    }
}

double BmsRcAch::eps(double log_M) const {
    LogSum acc;
    for (size_t k = 0; k < log_weight_.size(); ++k) {
        double f = log_pow1m(log_ball_[k], log_M);
        if (std::isinf(f) && f < 0) continue;
        acc.add(log_weight_[k] + f);
    }
    return std::min(1.0, std::exp(acc.ln()));
}

BmsCcAch::BmsCcAch(double p, int64_t n, double d) : n_(n) {
    check_bms_args(p, n, d);
    const double q = (p - d) / (1.0 - 2.0 * d);
    const double nd = double(n) * d;
    const int64_t t = std::min<int64_t>(n, int64_t(std::ceil(double(n) * q - 1e-12)));
    const double ln_comp = log_binomial(n, t);
    log_weight_.resize(size_t(n) + 1);
    log_ball_.resize(size_t(n) + 1);
    for (int64_t k = 0; k <= n; ++k) {
        log_weight_[size_t(k)] = log_binom_pmf(n, p, k);
        double lb = kNegInf;
        if (double(k) >= double(t) - nd && double(k) <= double(t) + nd) {
            double x = 0.5 * (double(t + k) - nd);
            int64_t t0 = std::max<int64_t>(0, int64_t(std::ceil(x)));
            if (t0 <= k && t - t0 >= 0 && t - t0 <= n - k)
                lb = log_binomial(k, t0) + log_binomial(n - k, t - t0) - ln_comp;
        }
        log_ball_[size_t(k)] = std::min(lb, 0.0);
    }
}

double BmsCcAch::eps(double log_M) const {
    LogSum acc;
    for (size_t k = 0; k < log_weight_.size(); ++k) {
        double f = log_pow1m(log_ball_[k], log_M);
        if (std::isinf(f) && f < 0) continue;
        acc.add(log_weight_[k] + f);
    }
    return std::min(1.0, std::exp(acc.ln()));
}

double BmsShannonAch::Channel::info_tail(double T, int64_t n) const {
    // P[info sum > T]
    if (flat) {
        // c0 + alpha*K > T with alpha < 0  <=>  K < (T - c0)/alpha
        double u = (T - c0) / alpha;
        int64_t m = int64_t(std::ceil(u - 1e-9)) - 1;
        if (m < 0) return 0.0;
        if (m >= int64_t(k_prefix.size())) return 1.0;
        return k_prefix[size_t(m)];
    }
    // K values outside [klo,khi] are counted as full tail hits so the
    // truncation can only loosen the bound, never invalidate it.
    double s = k_dropped;
    for (int64_t k = klo; k <= khi; ++k) {
        double thr = (T - c0 - alpha * double(k)) / beta;
        int64_t m = int64_t(std::floor(thr + 1e-9)) + 1;
        if (m > n + 1) m = n + 1;
        if (m < 0) m = 0;
        s += pk[size_t(k - klo)] * nsurv[size_t(k - klo)][size_t(m)];
    }
    return s;
}

BmsShannonAch::BmsShannonAch(double p, int64_t n, double d, int channel_grid) : n_(n) {
    if (n < 1) throw_domain("bms_shannon: n < 1");
    if (!(p > 0.0 && p <= 0.5)) throw_domain("bms_shannon: need 0 < p <= 1/2");
    if (!(d >= 0.0 && d < p)) throw_domain("bms_shannon: need 0 <= d < p");
    if (channel_grid < 2) channel_grid = 2;

    // Design-distortion grid. The test-channel family is the rate-distortion
    // achieving channel at d' <= d; d' = d itself keeps half the distortion
    // mass above the threshold, so smaller d' dominate. A dense segment sits
    // where the large-n optimum lives, plus a deep log tail for short blocks
    // and strict eps targets (the objective is insensitive to log-coarseness
    // there).
    double hi = d > 0.0 ? d : std::min(0.999 * p, 50.0 / double(n));
    double mid = hi / 50.0;
    std::vector<double> dps;
    for (int i = 0; i < channel_grid; ++i) {
        double f = double(i) / double(channel_grid - 1);
        dps.push_back(mid * std::pow(hi / mid, f));
    }
    for (int i = 0; i < 12; ++i) {
        double f = double(i) / 12.0;  // log-spaced [hi*1e-8, mid)
        dps.push_back(hi * 1e-8 * std::pow(mid / (hi * 1e-8), f));
    }
    std::sort(dps.begin(), dps.end());

    for (double dp : dps) {
        if (!(dp > 0.0) || dp >= 0.5) continue;
        double q = (p - dp) / (1.0 - 2.0 * dp);
        if (!(q > 0.0 && q < 1.0)) continue;

        Channel ch;
        ch.flat = (p == 0.5);
        ch.c0 = double(n) * (std::log1p(-dp) - std::log1p(-p));
        ch.alpha = std::log(dp) - std::log1p(-dp);
        ch.beta = std::log1p(-p) - std::log(p);

        // P[Bin(n, d') > n d], exact suffix in the log domain.
        {
            LogSum tail;
            for (int64_t k = floor_nd(n, d) + 1; k <= n; ++k)
                tail.add(log_binom_pmf(n, dp, k));
            ch.p1 = std::min(1.0, std::exp(tail.ln()));
        }

        if (ch.flat) {
            ch.k_prefix.resize(size_t(n) + 1);
            double cum = 0.0;
            for (int64_t k = 0; k <= n; ++k) {
                cum += std::exp(log_binom_pmf(n, dp, k));
                ch.k_prefix[size_t(k)] = std::min(cum, 1.0);
            }
            channels_.push_back(std::move(ch));
            continue;
        }

        // Usable K range.
        std::vector<double> lpk(size_t(n) + 1);
        double best = kNegInf;
        for (int64_t k = 0; k <= n; ++k) {
            lpk[size_t(k)] = log_binom_pmf(n, dp, k);
            best = std::max(best, lpk[size_t(k)]);
        }
        int64_t klo = 0, khi = n;
        while (klo < n && lpk[size_t(klo)] < best - 46.0) ++klo;
        while (khi > klo && lpk[size_t(khi)] < best - 46.0) --khi;
        ch.klo = klo;
        ch.khi = khi;
        ch.k_dropped = 0.0;
        for (int64_t k = 0; k <= n; ++k)
            if (k < klo || k > khi) ch.k_dropped += std::exp(lpk[size_t(k)]);

        for (int64_t k = klo; k <= khi; ++k) {
            ch.pk.push_back(std::exp(lpk[size_t(k)]));
            // N | K=k: Bin(n-k, q) convolved with Bin(k, 1-q), linear domain.
            std::vector<double> a(size_t(n - k) + 1), b(size_t(k) + 1);
            for (int64_t j = 0; j <= n - k; ++j) a[size_t(j)] = std::exp(log_binom_pmf(n - k, q, j));
            for (int64_t j = 0; j <= k; ++j) b[size_t(j)] = std::exp(log_binom_pmf(k, 1.0 - q, j));
            std::vector<double> pmf(size_t(n) + 1, 0.0);
            for (size_t i1 = 0; i1 < a.size(); ++i1) {
                if (a[i1] == 0.0) continue;
                for (size_t i2 = 0; i2 < b.size(); ++i2) pmf[i1 + i2] += a[i1] * b[i2];
            }
            std::vector<double> surv(size_t(n) + 2, 0.0);
            for (size_t m = pmf.size(); m-- > 0;) surv[m] = surv[m + 1] + pmf[m];
            ch.nsurv.push_back(std::move(surv));
        }
        channels_.push_back(std::move(ch));
    }
    if (channels_.empty()) throw_internal("bms_shannon: empty channel grid");
}

double BmsShannonAch::eps(double log_M) const {
    double best = 1.0;
    for (const auto& ch : channels_) {
        auto objective = [&](double gamma) {
            double tail = ch.info_tail(log_M - gamma, n_);
            return -(tail + std::exp(-std::exp(std::min(gamma, 700.0))));
        };
        MaxResult r = maximize_1d(objective, 1e-9, 60.0, 1e-9);
        best = std::min(best, ch.p1 - r.max);
    }
    return std::min(1.0, std::max(0.0, best));
}

}  // namespace binary
}  // namespace rdb
