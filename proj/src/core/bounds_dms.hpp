#ifndef RDB_CORE_BOUNDS_DMS_HPP
#define RDB_CORE_BOUNDS_DMS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "bounds_core.hpp"
#include "source_model.hpp"

namespace rdb {
namespace dms {

// Number of n-types over an m-letter alphabet, C(n+m-1, m-1), as a double.
double type_count(int64_t n, int m);

// Enumerate all n-types; visit(counts) is called once per type.
void for_each_type(int64_t n, int m, const std::function<void(const std::vector<int64_t>&)>& visit,
                   double budget = 1e7);

// Equiprobable alphabet: sphere-covering converse / exact random coding,
// direct log M forms and the eps-at-M forms.
double edms_converse_eps(int64_t n, double d, double log_M, int m);
double edms_converse_log_m(int64_t n, double d, double eps, int m);
double edms_ach_eps(int64_t n, double d, double log_M, int m);
double edms_ach_log_m(int64_t n, double d, double eps, int m);

// Tilted-information converse via the generic engine.
double dms_converse_tilted_eps(const std::vector<double>& pmf, int64_t n, double d, double log_M);

// Hypothesis-testing converse: optimal test between the product source and
// the equiprobable measure, resolved at type granularity (ties share alpha
// proportionally).
double dms_converse_ht_log_m(const std::vector<double>& pmf, int64_t n, double d, double eps,
                             double budget = 1e7);

// Constant-composition random coding: codewords of the rounded
// rate-distortion-optimal composition; per-type letter allocations start at
// the continuous optimum, get repaired onto the constraint set, then
// hill-climb on the counting product.
class DmsCcAch {
  public:
    DmsCcAch(const std::vector<double>& pmf, int64_t n, double d, double budget = 1e7);
    double eps(double log_M) const;
    const std::vector<int64_t>& composition() const { return t_star_; }

  private:
    std::vector<int64_t> t_star_;
    std::vector<double> log_weight_;  // per type
    std::vector<double> log_ball_;    // per type: ln L_n(k,t*) - ln C(n,t*)
};

}  // namespace dms
}  // namespace rdb

#endif  // RDB_CORE_BOUNDS_DMS_HPP
