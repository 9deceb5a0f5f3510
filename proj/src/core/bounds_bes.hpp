#ifndef RDB_CORE_BOUNDS_BES_HPP
#define RDB_CORE_BOUNDS_BES_HPP

#include <cstdint>
#include <vector>

namespace rdb {
namespace bes {

// Bounds for the erased equiprobable binary source. Erased positions carry
// Bernoulli(1/2) errors whatever the code does; the nonerased remainder
// behaves like an equiprobable binary source at the reduced length. Both
// bounds share the per-(erasure count, erased-error count) weight tables,
// built once per (delta, n, d).
class BesBounds {
  public:
    BesBounds(double delta, int64_t n, double d);

    // eps lower bound for an M-codeword code.
    double converse_eps(double log_M) const;
    // ensemble-average eps for M iid equiprobable codewords.
    double ach_eps(double log_M) const;

    int64_t n() const { return n_; }

  private:
    int64_t n_;
    int64_t nd_;
    int64_t k_hi_;                                // erasure-count truncation
    double log_tail_;                             // mass beyond k_hi_
    std::vector<double> log_weight_k_;            // C(n,k) delta^k (1-delta)^{n-k}
    std::vector<std::vector<double>> log_ball_;   // [k][j]: 2^{-(n-k)} <n-k | nd-j>
};

}  // namespace bes
}  // namespace rdb

#endif  // RDB_CORE_BOUNDS_BES_HPP
