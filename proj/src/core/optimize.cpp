#include "optimize.hpp"

#include <cmath>
#include <vector>

#include "errors.hpp"

namespace rdb {

namespace {
constexpr double kGolden = 0.6180339887498949;  // 1/phi

double checked(const std::function<double(double)>& f, double x) {
    double v = f(x);
    if (std::isnan(v)) throw_numeric("maximize_1d: objective returned NaN");
    return v;
}
}  // namespace

MaxResult maximize_1d(const std::function<double(double)>& f, double lo, double hi, double tol,
                      int grid_points) {
    if (!(lo < hi)) throw_domain("maximize_1d: need lo < hi");
    if (grid_points < 256) grid_points = 256;

    int best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    std::vector<double> xs(size_t(grid_points) + 1);
    for (int i = 0; i <= grid_points; ++i) {
        double x = lo + (hi - lo) * double(i) / double(grid_points);
        xs[size_t(i)] = x;
        double v = checked(f, x);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double a = xs[size_t(std::max(0, best - 1))];
    double b = xs[size_t(std::min(grid_points, best + 1))];

    // Golden-section on [a,b].
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = checked(f, x1);
    double f2 = checked(f, x2);
    for (int it = 0; it < 400 && (b - a) > tol * (1.0 + std::fabs(a) + std::fabs(b)); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = checked(f, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = checked(f, x1);
        }
    }
    double xm = 0.5 * (a + b);
    double fm = checked(f, xm);
    if (f1 > fm) {
        fm = f1;
        xm = x1;
    }
    if (f2 > fm) {
        fm = f2;
        xm = x2;
    }
    if (best_val > fm) {
        fm = best_val;
        xm = xs[size_t(best)];
    }
    return {xm, fm};
}

namespace {

struct SimpsonState {
    const std::function<double(double)>& f;
    QuadratureOptions opts;
    double worst_residual = 0.0;

    double panel(double a, double fa, double b, double fb, double m, double fm, double whole,
                 int depth) {
        double lm = 0.5 * (a + m);
        double rm = 0.5 * (m + b);
        double flm = f(lm);
        double frm = f(rm);
        if (std::isnan(flm) || std::isnan(frm)) throw_numeric("integrate: integrand returned NaN");
        double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        double delta = left + right - whole;
        double tol = std::max(opts.abs_tol, opts.rel_tol * std::fabs(left + right));
        if (std::fabs(delta) <= 15.0 * tol || depth >= opts.max_depth) {
            if (depth >= opts.max_depth && std::fabs(delta) > 15.0 * tol) {
                worst_residual = std::max(worst_residual, std::fabs(delta) / 15.0);
            }
            return left + right + delta / 15.0;
        }
        return panel(a, fa, m, fm, lm, flm, left, depth + 1) +
               panel(m, fm, b, fb, rm, frm, right, depth + 1);
    }
};

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureOptions& opts) {
    if (!(lo <= hi)) throw_domain("integrate: need lo <= hi");
    if (lo == hi) return 0.0;
    SimpsonState st{f, opts};
    double fa = f(lo), fb = f(hi);
    double m = 0.5 * (lo + hi);
    double fm = f(m);
    if (std::isnan(fa) || std::isnan(fb) || std::isnan(fm))
        throw_numeric("integrate: integrand returned NaN");
    double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    double result = st.panel(lo, fa, hi, fb, m, fm, whole, 0);
    if (st.worst_residual > std::max(opts.abs_tol, opts.rel_tol * std::fabs(result))) {
        throw_numeric("integrate: depth cap hit, achieved tolerance " +
                      std::to_string(st.worst_residual));
    }
    return result;
}

double bisect_nonincreasing(const std::function<double(double)>& f, double lo, double hi,
                            double target, double x_tol) {
    for (int i = 0; i < 400 && (hi - lo) > x_tol; ++i) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) <= target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

}  // namespace rdb
