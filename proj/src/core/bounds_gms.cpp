#include "bounds_gms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bounds_core.hpp"
#include "chi_square.hpp"
#include "errors.hpp"
#include "optimize.hpp"

namespace rdb {
namespace gms {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_args(double sigma2, int64_t n, double d) {
    if (n < 1) throw_domain("gms bound: n < 1");
    if (!(sigma2 > 0.0)) throw_domain("gms bound: sigma2 <= 0");
    if (!(d > 0.0 && d < sigma2)) throw_domain("gms bound: need 0 < d < sigma2");
}
}  // namespace

double converse_tilted_eps(double sigma2, int64_t n, double d, double log_M) {
    check_args(sigma2, n, d);
    const double half_log_ratio = 0.5 * double(n) * std::log(sigma2 / d);
    auto objective = [&](double gamma) {
        double z0 = double(n) + 2.0 * (log_M + gamma - half_log_ratio);
        double tail = z0 <= 0.0 ? 1.0 : chi2_sf(n, z0);
        return tail - std::exp(-gamma);
    };
    MaxResult r = maximize_1d(objective, 0.0, 80.0, 1e-10);
    return std::min(1.0, std::max(0.0, r.max));
}

double converse_volume_log_m(double sigma2, int64_t n, double d, double eps) {
    check_args(sigma2, n, d);
    if (!(eps > 0.0 && eps < 1.0)) throw_domain("gms volume converse: eps outside (0,1)");
    double nr2 = chi2_quantile(n, 1.0 - eps);
    return 0.5 * double(n) * std::log(sigma2 * nr2 / (double(n) * d));
}

double covering_count_log_m(double r, int64_t n) {
    if (n < 2) throw_domain("covering_count: n < 2");
    if (!(r > 1.0)) throw_domain("covering_count: need radius ratio r > 1");
    const double nd = double(n);
    const double lnn = std::log(nd);
    const double lnr = std::log(r);
    const double rogers = nd * lnn + nd * std::log(lnn) + 5.0 * nd;

    if (r >= nd) return 1.0 + std::log(rogers) + nd * lnr;
    if (r >= nd / lnn) return lnn + std::log(rogers) + nd * lnr;

    // Small-ratio branches.
    double bracket = (nd - 1.0) * std::log(r * nd) + (nd - 1.0) * std::log(lnn) +
                     0.5 * lnn + std::log(M_PI * std::sqrt(2.0 * nd) / std::sqrt(M_PI * nd - 2.0));
    double denom = r * (1.0 - 2.0 / lnn) * (1.0 - 2.0 / std::sqrt(M_PI * nd));
    if (!(bracket > 0.0) || !(denom > 0.0))
        throw_numeric("covering_count: refinement branch undefined at this (r, n)");
    double val;
    if (r > 2.0) {
        const double refine_const = std::pow(7.0, 4.0 * std::log(7.0) / 7.0) / 4.0;
        val = std::log(refine_const) + 0.5 * std::log(2.0 * M_PI) + 1.5 * lnn +
              std::log(bracket) - std::log(denom) - 2.0 * std::log(lnn);
    } else {
        val = 0.5 * std::log(2.0 * M_PI) + 0.5 * lnn + std::log(bracket) - std::log(denom);
    }
    return val + nd * lnr;
}

double covering_ach_log_m(double sigma2, int64_t n, double d, double eps) {
    check_args(sigma2, n, d);
    if (n < 2) throw_domain("gms covering: n < 2");
    if (!(eps > 0.0 && eps < 1.0)) throw_domain("gms covering: eps outside (0,1)");
    double nr2 = chi2_quantile(n, 1.0 - eps);
    double ratio = std::sqrt(sigma2 * nr2 / (double(n) * d));
    if (!(ratio > 1.0)) throw_domain("gms covering: radius ratio <= 1, bound vacuous");
    return covering_count_log_m(ratio, n);
}

double cap_ach_eps(double sigma2, int64_t n, double d, double log_M) {
    check_args(sigma2, n, d);
    if (n < 2) throw_domain("gms cap: n < 2");
    const double dn = d / sigma2;
    const double sa = std::sqrt(1.0 - dn) - std::sqrt(dn);
    const double a2 = sa * sa;
    const double sb = std::sqrt(1.0 - dn) + std::sqrt(dn);
    const double b2 = sb * sb;
    const double ln_cap_const = std::lgamma(0.5 * double(n) + 1.0) -
                                0.5 * std::log(M_PI * double(n)) -
                                std::lgamma(0.5 * double(n - 1) + 1.0);

    auto ln_rho = [&](double z) {
        if (z <= a2 || z >= b2) return kNegInf;
        double c = 1.0 + z - 2.0 * dn;
        double s2 = 1.0 - c * c / (4.0 * (1.0 - dn) * z);
        if (s2 <= 0.0) return kNegInf;
        return ln_cap_const + 0.5 * double(n - 1) * std::log(s2);
    };
    auto integrand = [&](double z) {
        double lr = ln_rho(z);
        double lf;
        if (lr >= 0.0) {
            lf = kNegInf;  // cap covers the whole sphere
        } else {
            lf = log_pow1m(lr, log_M);
        }
        if (std::isinf(lf) && lf < 0) return 0.0;
        double lpdf = chi2_log_pdf(n, double(n) * z) + std::log(double(n));
        return std::exp(lpdf + lf);
    };

    // Analytic tails outside the cap support.
    double tails = chi2_cdf(n, double(n) * a2) + chi2_sf(n, double(n) * b2);

    // Split points: the rho maximum, the M*rho = 1 crossings on either side
    // of it (where the integrand switches on), and the density mode.
    double zm = std::fabs(1.0 - 2.0 * dn);
    zm = std::min(std::max(zm, a2 + 1e-14), b2 - 1e-14);
    std::vector<double> splits = {a2, zm, b2};
    if (ln_rho(zm) + log_M > 0.0) {
        double lo = a2, hi = zm;
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            (ln_rho(mid) + log_M > 0.0 ? hi : lo) = mid;
        }
        splits.push_back(lo);
        lo = zm;
        hi = b2;
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            (ln_rho(mid) + log_M > 0.0 ? lo : hi) = mid;
        }
        splits.push_back(hi);
    }
    if (a2 < 1.0 && 1.0 < b2) splits.push_back(1.0);
    std::sort(splits.begin(), splits.end());

    QuadratureOptions opts;
    opts.abs_tol = 1e-10;
    opts.rel_tol = 1e-9;
    double integral = 0.0;
    for (size_t i = 0; i + 1 < splits.size(); ++i) {
        if (splits[i + 1] - splits[i] < 1e-15) continue;
        integral += integrate(integrand, splits[i], splits[i + 1], opts);
    }
    return std::min(1.0, tails + integral);
}

}  // namespace gms
}  // namespace rdb
