#include "bounds_core.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace rdb {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kExpOverflow = 709.0;
}  // namespace

// ln((1 - w)^M) with w = e^{log_w}, M = e^{log_M}, never materializing either
// when large. log_M = -inf encodes M = 0.
double log_pow1m(double log_w, double log_M) {
    if (std::isinf(log_M) && log_M < 0) return 0.0;  // M = 0
    if (log_w >= -1e-12) return kNegInf;             // w = 1: perfect coverage
    if (std::isinf(log_w) && log_w < 0) return 0.0;  // w = 0
    // ln(-ln(1-w)) = ln w + ln(1 + w/2 + w^2/3 + ...)
    double ln_neg_l1p;
    if (log_w > -36.0) {
        ln_neg_l1p = std::log(-std::log1p(-std::exp(log_w)));
    } else {
        ln_neg_l1p = log_w + std::log1p(0.5 * std::exp(log_w));
    }
    double s = log_M + ln_neg_l1p;
    if (s > kExpOverflow) return kNegInf;
    return -std::exp(s);
}

// ln(e^{-M w}) = -M w, in the same conventions.
double log_exp_neg_mw(double log_w, double log_M) {
    if (std::isinf(log_M) && log_M < 0) return 0.0;
    double s = log_M + log_w;
    if (s > kExpOverflow) return kNegInf;
    return -std::exp(s);
}

double converse_tilted(const SumDist& sum, double log_M) {
    const auto& vals = sum.values();
    double best = 0.0;

    // gamma = 0 candidate.
    {
        double p = std::exp(sum.log_survival(log_M));
        best = std::max(best, p - 1.0);
    }
    // gamma at each atom boundary above log M.
    for (size_t j = 0; j < vals.size(); ++j) {
        double gamma = vals[j] - log_M;
        if (gamma <= 0.0) continue;
        double p = std::exp(sum.log_survival_at(j));
        double cand = p - std::exp(-gamma);
        best = std::max(best, cand);
    }
    return std::min(1.0, std::max(0.0, best));
}

double rc_exact(const BallMassDist& w, double log_M) {
    if (w.log_w.size() != w.log_prob.size()) throw_internal("rc_exact: malformed ball-mass dist");
    LogSum acc;
    for (size_t i = 0; i < w.log_w.size(); ++i) {
        double f = log_pow1m(w.log_w[i], log_M);
        if (std::isinf(f) && f < 0) continue;
        acc.add(w.log_prob[i] + f);
    }
    return std::min(1.0, std::exp(acc.ln()));
}

double rc_relaxed(const BallMassDist& w, double log_M) {
    if (w.log_w.size() != w.log_prob.size()) throw_internal("rc_relaxed: malformed ball-mass dist");
    LogSum acc;
    for (size_t i = 0; i < w.log_w.size(); ++i) {
        double f = log_exp_neg_mw(w.log_w[i], log_M);
        if (std::isinf(f) && f < 0) continue;
        acc.add(w.log_prob[i] + f);
    }
    return std::min(1.0, std::exp(acc.ln()));
}

double ht_converse(LogReal log_beta, LogReal log_max_ball) {
    return log_beta.ln - log_max_ball.ln;
}

double shannon_ach(const std::vector<JointAtom>& per_letter, int64_t n, double d, double log_M,
                   double budget) {
    if (per_letter.empty()) throw_domain("shannon_ach: empty joint");
    double total = 0.0;
    TiltedInfoDist info, dist;
    for (const auto& a : per_letter) {
        if (a.prob < 0.0) throw_domain("shannon_ach: negative probability");
        total += a.prob;
        if (a.prob == 0.0) continue;
        info.atoms.push_back({a.info_nats, a.prob});
        dist.atoms.push_back({a.dist_value, a.prob});
    }
    if (std::fabs(total - 1.0) > 1e-9) throw_domain("shannon_ach: joint does not sum to 1");

    SumDist info_sum = convolve_iid(info, n, budget);
    SumDist dist_sum = convolve_iid(dist, n, budget);

    double nd = double(n) * d;
    double p1 = std::exp(dist_sum.log_survival_strict(nd + 1e-9 * (1.0 + std::fabs(nd))));

    // inf over gamma > 0: on each piece where the info-sum survival is
    // constant the objective decreases in gamma, so the infimum is attained
    // with log M - gamma at an atom.
    double best = 1.0;
    const auto& vals = info_sum.values();
    for (size_t j = 0; j < vals.size(); ++j) {
        double gamma = log_M - vals[j];
        if (gamma <= 0.0) continue;
        double tail = (j + 1 < vals.size()) ? std::exp(info_sum.log_survival_at(j + 1)) : 0.0;
        double g = std::exp(-std::exp(std::min(gamma, 700.0)));
        best = std::min(best, tail + g);
    }
    return std::min(1.0, p1 + best);
}

}  // namespace rdb
