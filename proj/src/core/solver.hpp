#ifndef RDB_CORE_SOLVER_HPP
#define RDB_CORE_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "source_model.hpp"

namespace rdb {

enum class BoundKind { Converse, Achievability, Approximation };

enum class ThetaMode {
    Zero,      // R(d) + sqrt(V/n) Qinv(eps)
    HalfLogN,  // ... + (1/2) ln(n)/n
    Lossless,  // ... - (1/2) ln(n)/n
    Envelope,  // per-source upper envelope of the remainder term
};

struct BoundValue {
    BoundKind kind;
    std::string name;
    double log_M_nats;
    double rate_bits;
    std::map<std::string, double> diagnostics;
};

struct EvalOptions {
    ThetaMode theta = ThetaMode::Zero;
    bool integer_m = false;   // ceil for achievability, floor for converse
    double log_m_tol = 1e-7;  // bisection tolerance in nats
};

// Inverts a monotone eps(log M) map at the target excess probability.
// Achievability kind: minimal log M with eps <= target (upper-bounds the
// optimum code size). Converse kind: minimal log M at which the eps lower
// bound stops excluding codes (lower-bounds the optimum code size).
// Monotonicity is spot-checked; log_M_hi caps the bracket.
double rate_from_eps_bound(const std::function<double(double)>& eps_fn, double eps,
                           BoundKind kind, double log_M_hi, const EvalOptions& opts = {});

// Gaussian approximation R(d) + sqrt(V(d)/n) Qinv(eps) + theta, rate in nats.
// Zero-dispersion sources use the strengthened R(d) - ln(1/(1-eps))/n form in
// the Zero theta mode.
double gaussian_approx_nats(const SourceModel& src, int64_t n, double d, double eps,
                            ThetaMode theta);

// Named-bound registry.
std::vector<std::string> bound_names(const SourceModel& src);

// Evaluate a named bound at (n, d, eps) as a rate bound.
BoundValue eval_rate_bound(const SourceModel& src, const std::string& name, int64_t n, double d,
                           double eps, const EvalOptions& opts = {});

// eps-at-M query for the eps-form bounds (direct-form bounds are rejected).
double eval_eps_bound(const SourceModel& src, const std::string& name, int64_t n, double d,
                      double log_M);

// Fixed-rate distortion bound D(n,R,eps): bisection over d of the named
// bound's eps evaluation. Returns an upper bound on attainable distortion for
// achievability bounds, a lower bound for converses.
double eval_distortion_bound(const SourceModel& src, const std::string& name, int64_t n,
                             double rate_nats, double eps, const EvalOptions& opts = {});

}  // namespace rdb

#endif  // RDB_CORE_SOLVER_HPP
