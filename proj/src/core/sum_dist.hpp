#ifndef RDB_CORE_SUM_DIST_HPP
#define RDB_CORE_SUM_DIST_HPP

#include <cstdint>
#include <vector>

#include "source_model.hpp"

namespace rdb {

// Exact distribution of the sum of n iid copies of a discrete variable,
// stored as merged atoms sorted ascending by value, with a precomputed
// log-survival table.
class SumDist {
  public:
    SumDist(std::vector<double> values, std::vector<double> log_probs);

    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& log_probs() const { return log_probs_; }

    // ln P[S >= values()[i]]
    double log_survival_at(size_t i) const { return log_surv_[i]; }

    // ln P[S >= t]
    double log_survival(double t) const;

    // ln P[S > t]
    double log_survival_strict(double t) const;

    // ln total mass; should be ~0.
    double log_total() const { return log_surv_.empty() ? -1e300 : log_surv_[0]; }

  private:
    std::vector<double> values_;
    std::vector<double> log_probs_;
    std::vector<double> log_surv_;
};

// Exact n-fold iid convolution of a small atom set. Atom values are merged
// first; with k distinct values the count-vector enumeration costs
// C(n+k-1, k-1) leaves and is refused above `budget` (the caller is expected
// to fall back to a Berry-Esseen diagnostic instead).
SumDist convolve_iid(const TiltedInfoDist& atoms, int64_t n, double budget = 1e7);

}  // namespace rdb

#endif  // RDB_CORE_SUM_DIST_HPP
