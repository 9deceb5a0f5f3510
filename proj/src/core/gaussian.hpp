#ifndef RDB_CORE_GAUSSIAN_HPP
#define RDB_CORE_GAUSSIAN_HPP

namespace rdb {

// Standard Gaussian complementary cdf Q(t) = P[N(0,1) > t].
double q_func(double t);

// Standard Gaussian density.
double normal_pdf(double t);

// Q^{-1}(eps) for eps in (0,1): rational seed refined by Newton on Q.
double q_inv(double eps);

struct BerryEsseenWindow {
    double estimate;  // Q(t)
    double radius;    // B_n / sqrt(n), B_n = 6 T / V^{3/2}
};

// CLT estimate with its Berry-Esseen error radius for the standardized sum of
// n iid terms with variance V and third absolute central moment T. Diagnostic
// only; never used as a bound value.
BerryEsseenWindow berry_esseen_window(double mu, double V, double T, long n, double t);

}  // namespace rdb

#endif  // RDB_CORE_GAUSSIAN_HPP
