#ifndef RDB_CORE_CHI_SQUARE_HPP
#define RDB_CORE_CHI_SQUARE_HPP

namespace rdb {

// Regularized lower incomplete gamma P(a,x); series for x < a+1, continued
// fraction otherwise.
double reg_lower_gamma(double a, double x);

// Chi-square distribution with n degrees of freedom.
double chi2_cdf(long n, double x);
double chi2_sf(long n, double x);   // 1 - cdf, computed on its own branch
double chi2_pdf(long n, double x);
double chi2_log_pdf(long n, double x);

// Inverse cdf: bisection bracket followed by Newton polish.
double chi2_quantile(long n, double p);

}  // namespace rdb

#endif  // RDB_CORE_CHI_SQUARE_HPP
