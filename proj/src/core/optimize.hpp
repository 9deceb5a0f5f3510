#ifndef RDB_CORE_OPTIMIZE_HPP
#define RDB_CORE_OPTIMIZE_HPP

#include <functional>

namespace rdb {

struct MaxResult {
    double argmax;
    double max;
};

// Coarse grid scan (>= 256 points) followed by golden-section refinement of
// the bracketing interval. The grid guards against multimodality; the
// refinement assumes the located bracket is unimodal.
MaxResult maximize_1d(const std::function<double(double)>& f, double lo, double hi,
                      double tol = 1e-10, int grid_points = 256);

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_depth = 60;
};

// Adaptive Simpson with absolute+relative tolerance and a depth cap. Throws a
// numeric error naming the achieved tolerance when a panel hits the cap with
// its local error still above budget.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureOptions& opts = {});

// Minimal real x in [lo,hi] with f(x) <= target, for nonincreasing f.
// Returns hi-side iterate; caller checks bracketing beforehand.
double bisect_nonincreasing(const std::function<double(double)>& f, double lo, double hi,
                            double target, double x_tol);

}  // namespace rdb

#endif  // RDB_CORE_OPTIMIZE_HPP
