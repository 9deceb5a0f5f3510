#include "sum_dist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "log_real.hpp"

namespace rdb {

namespace {

// Merge nearly-equal neighbouring values (they come from identical closed
// forms evaluated along different paths, so the gap is pure rounding).
bool close_values(double a, double b) { return std::fabs(a - b) <= 1e-11 * (1.0 + std::fabs(a)); }

}  // namespace

SumDist::SumDist(std::vector<double> values, std::vector<double> log_probs)
    : values_(std::move(values)), log_probs_(std::move(log_probs)) {
    if (values_.size() != log_probs_.size() || values_.empty())
        throw_internal("SumDist: malformed atom arrays");
    // Suffix log-sum-exp for the survival table.
    log_surv_.resize(values_.size());
    double acc = -std::numeric_limits<double>::infinity();
    for (size_t i = values_.size(); i-- > 0;) {
        acc = log_add(acc, log_probs_[i]);
        log_surv_[i] = acc;
    }
    if (std::fabs(std::expm1(log_surv_[0])) > 1e-9)
        throw_internal("SumDist: total mass deviates from 1");
}

double SumDist::log_survival(double t) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), t);
    if (it == values_.end()) return -std::numeric_limits<double>::infinity();
    return log_surv_[size_t(it - values_.begin())];
}

double SumDist::log_survival_strict(double t) const {
    auto it = std::upper_bound(values_.begin(), values_.end(), t);
    if (it == values_.end()) return -std::numeric_limits<double>::infinity();
    return log_surv_[size_t(it - values_.begin())];
}

SumDist convolve_iid(const TiltedInfoDist& atoms, int64_t n, double budget) {
    if (atoms.atoms.empty()) throw_domain("convolve_iid: empty atom set");
    if (n < 1) throw_domain("convolve_iid: n < 1");

    // Merge equal atom values.
    std::vector<TiltedAtom> merged(atoms.atoms);
    std::sort(merged.begin(), merged.end(),
              [](const TiltedAtom& a, const TiltedAtom& b) { return a.value_nats < b.value_nats; });
    std::vector<double> vals, lps;
    for (const auto& a : merged) {
        if (a.prob <= 0.0) continue;
        if (!vals.empty() && close_values(vals.back(), a.value_nats)) {
            lps.back() = log_add(lps.back(), std::log(a.prob));
        } else {
            vals.push_back(a.value_nats);
            lps.push_back(std::log(a.prob));
        }
    }
    const size_t k = vals.size();
    if (k > 8) throw_domain("convolve_iid: more than 8 distinct atom values");

    if (k == 1) {
        return SumDist({double(n) * vals[0]}, {0.0});
    }

    // Leaf count C(n+k-1, k-1); refuse rather than approximate silently.
    double log_leaves = log_binomial(n + int64_t(k) - 1, int64_t(k) - 1);
    if (log_leaves > std::log(budget)) {
        throw_resource(
            "convolve_iid: exact enumeration over " + std::to_string(std::exp(log_leaves)) +
            " count vectors exceeds the budget of " + std::to_string(budget) +
            "; use the Berry-Esseen diagnostic window instead of the exact distribution");
    }

    // lgamma table for multinomial weights.
    std::vector<double> lg(size_t(n) + 2);
    for (size_t i = 0; i < lg.size(); ++i) lg[i] = std::lgamma(double(i) + 1.0);

    std::vector<std::pair<double, double>> sums;  // (value, log_prob)
    sums.reserve(size_t(std::exp(log_leaves)) + 1);

    // Recursive enumeration of count vectors (c_0 .. c_{k-1}) summing to n.
    std::vector<int64_t> counts(k, 0);
    auto rec = [&](auto&& self, size_t idx, int64_t rem, double value, double logw) -> void {
        if (idx == k - 1) {
            counts[idx] = rem;
            double lw = logw - lg[size_t(rem)] + double(rem) * lps[idx];
            sums.emplace_back(value + double(rem) * vals[idx], lg[size_t(n)] + lw);
            return;
        }
        for (int64_t c = 0; c <= rem; ++c) {
            self(self, idx + 1, rem - c, value + double(c) * vals[idx],
                 logw - lg[size_t(c)] + double(c) * lps[idx]);
        }
    };
    rec(rec, 0, n, 0.0, 0.0);

    std::sort(sums.begin(), sums.end());
    std::vector<double> out_vals, out_lps;
    out_vals.reserve(sums.size());
    out_lps.reserve(sums.size());
    for (const auto& [v, lp] : sums) {
        if (!out_vals.empty() && close_values(out_vals.back(), v)) {
            out_lps.back() = log_add(out_lps.back(), lp);
        } else {
            out_vals.push_back(v);
            out_lps.push_back(lp);
        }
    }
    return SumDist(std::move(out_vals), std::move(out_lps));
}

}  // namespace rdb
