#include "chi_square.hpp"

#include <cmath>
#include <limits>

#include "errors.hpp"
#include "gaussian.hpp"

namespace rdb {

namespace {

constexpr int kMaxIter = 100000;
constexpr double kEps = 1e-16;

// Series for P(a,x), valid (fast) for x < a+1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw_numeric("reg_lower_gamma: series did not converge");
}

// Modified Lentz continued fraction for Q(a,x), valid (fast) for x >= a+1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double frac = d;
    for (int i = 1; i < kMaxIter; ++i) {
        double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        frac *= delta;
        if (std::fabs(delta - 1.0) < kEps) {
            return frac * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw_numeric("reg_lower_gamma: continued fraction did not converge");
}

}  // namespace

double reg_lower_gamma(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw_domain("reg_lower_gamma: need a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double chi2_cdf(long n, double x) {
    if (n < 1) throw_domain("chi2_cdf: n < 1");
    if (x < 0.0) throw_domain("chi2_cdf: x < 0");
    return reg_lower_gamma(0.5 * double(n), 0.5 * x);
}

double chi2_sf(long n, double x) {
    if (n < 1) throw_domain("chi2_sf: n < 1");
    if (x < 0.0) throw_domain("chi2_sf: x < 0");
    if (x == 0.0) return 1.0;
    double a = 0.5 * double(n);
    double xx = 0.5 * x;
    if (xx < a + 1.0) return 1.0 - gamma_p_series(a, xx);
    return gamma_q_cf(a, xx);
}

double chi2_log_pdf(long n, double x) {
    if (n < 1) throw_domain("chi2_pdf: n < 1");
    if (x < 0.0) throw_domain("chi2_pdf: x < 0");
    double a = 0.5 * double(n);
    if (x == 0.0) {
        if (n == 2) return std::log(0.5);
        return n == 1 ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
    }
    return (a - 1.0) * std::log(x) - 0.5 * x - a * std::log(2.0) - std::lgamma(a);
}

double chi2_pdf(long n, double x) { return std::exp(chi2_log_pdf(n, x)); }

double chi2_quantile(long n, double p) {
    if (n < 1) throw_domain("chi2_quantile: n < 1");
    if (!(p > 0.0 && p < 1.0)) throw_domain("chi2_quantile: p must lie in (0,1)");

    // Wilson-Hilferty seed.
    double nd = double(n);
    double z = -q_inv(p);  // standard normal quantile at p
    double t = 1.0 - 2.0 / (9.0 * nd) + z * std::sqrt(2.0 / (9.0 * nd));
    double x = nd * t * t * t;
    if (!(x > 0.0)) x = 0.5;

    // Bracket the root.
    double lo = x, hi = x;
    while (chi2_cdf(n, lo) > p && lo > 1e-300) lo *= 0.5;
    while (chi2_cdf(n, hi) < p) hi = hi * 2.0 + 1.0;

    // Bisection until tight enough for Newton.
    for (int i = 0; i < 200 && (hi - lo) > 1e-3 * (1.0 + lo); ++i) {
        double mid = 0.5 * (lo + hi);
        (chi2_cdf(n, mid) < p ? lo : hi) = mid;
    }
    x = 0.5 * (lo + hi);
    for (int i = 0; i < 60; ++i) {
        double f = chi2_cdf(n, x) - p;
        double df = chi2_pdf(n, x);
        if (!(df > 0.0)) break;
        double step = f / df;
        double nx = x - step;
        if (nx <= lo || nx >= hi) {  // fall back onto the bracket
            (f < 0.0 ? lo : hi) = x;
            nx = 0.5 * (lo + hi);
        } else {
            (f < 0.0 ? lo : hi) = x;
        }
        if (std::fabs(nx - x) < 1e-12 * (1.0 + std::fabs(nx))) {
            x = nx;
            break;
        }
        x = nx;
    }
    return x;
}

}  // namespace rdb
