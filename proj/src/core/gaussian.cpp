#include "gaussian.hpp"

#include <cmath>

#include "errors.hpp"

namespace rdb {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;

// Acklam's rational approximation to the standard normal quantile,
// |error| < 1.15e-9; two Newton corrections below push it to ~1e-15.
double norm_quantile_seed(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}
}  // namespace

double q_func(double t) { return 0.5 * std::erfc(t / kSqrt2); }

double normal_pdf(double t) { return kInvSqrt2Pi * std::exp(-0.5 * t * t); }

double q_inv(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw_domain("q_inv: eps must lie in (0,1)");
    // Q(t) = eps  <=>  t = Phi^{-1}(1 - eps)
    double t = -norm_quantile_seed(eps);
    for (int i = 0; i < 3; ++i) {
        double f = q_func(t) - eps;
        double df = -normal_pdf(t);
        if (df == 0.0) break;
        double step = f / df;
        t -= step;
        if (std::fabs(step) < 1e-14 * (1.0 + std::fabs(t))) break;
    }
    return t;
}

BerryEsseenWindow berry_esseen_window(double mu, double V, double T, long n, double t) {
    (void)mu;
    if (!(V > 0.0)) throw_domain("berry_esseen_window: degenerate distribution (V <= 0)");
    if (!(T >= 0.0) || !std::isfinite(T)) throw_domain("berry_esseen_window: bad third moment");
    if (n < 1) throw_domain("berry_esseen_window: n < 1");
    double bn = 6.0 * T / std::pow(V, 1.5);
    return {q_func(t), bn / std::sqrt(double(n))};
}

}  // namespace rdb
