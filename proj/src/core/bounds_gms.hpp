#ifndef RDB_CORE_BOUNDS_GMS_HPP
#define RDB_CORE_BOUNDS_GMS_HPP

#include <cstdint>

namespace rdb {
namespace gms {

// Tilted-information converse: the per-block tilted sum is an affine map of a
// chi-square variable; the gamma supremum is located by grid + golden search.
double converse_tilted_eps(double sigma2, int64_t n, double d, double log_M);

// Volume (sphere-covering) converse: log M >= (n/2) ln(sigma^2 r_n^2 / d),
// n r_n^2 the (1-eps) chi-square quantile.
double converse_volume_log_m(double sigma2, int64_t n, double d, double eps);

// ln of the sphere-covering count: how many unit balls cover a ball of
// radius r. Piecewise in r; the two large-r branches are the classical
// covering estimate, the two small-r branches its later refinement.
double covering_count_log_m(double r, int64_t n);

// Covering achievability: cover the (1-eps)-probability ball with
// distortion balls.
double covering_ach_log_m(double sigma2, int64_t n, double d, double eps);

// Sphere-cap random coding: codewords uniform on the concentric sphere of
// squared radius n(sigma^2 - d); the excess probability is a chi-square
// expectation evaluated by adaptive quadrature plus two analytic tails.
double cap_ach_eps(double sigma2, int64_t n, double d, double log_M);

}  // namespace gms
}  // namespace rdb

#endif  // RDB_CORE_BOUNDS_GMS_HPP
