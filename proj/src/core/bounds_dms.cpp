#include "bounds_dms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "sum_dist.hpp"

namespace rdb {
namespace dms {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_edms_args(int64_t n, double d, int m) {
    if (n < 1 || m < 2) throw_domain("edms bound: need n >= 1, m >= 2");
    if (!(d >= 0.0 && d < 1.0 - 1.0 / double(m)))
        throw_domain("edms bound: need 0 <= d < 1 - 1/m");
}

double log_ball_fraction(int64_t n, double d, int m) {
    return log_hamming_ball(n, floor_nd(n, d), m).ln - double(n) * std::log(double(m));
}
}  // namespace

double type_count(int64_t n, int m) { return std::exp(log_binomial(n + m - 1, m - 1)); }

void for_each_type(int64_t n, int m, const std::function<void(const std::vector<int64_t>&)>& visit,
                   double budget) {
    if (type_count(n, m) > budget) {
        throw_resource("type enumeration: " + std::to_string(type_count(n, m)) +
                       " n-types exceed the budget of " + std::to_string(budget));
    }
    std::vector<int64_t> counts(size_t(m), 0);
    auto rec = [&](auto&& self, int idx, int64_t rem) -> void {
        if (idx == m - 1) {
            counts[size_t(idx)] = rem;
            visit(counts);
            return;
        }
        for (int64_t c = rem; c >= 0; --c) {
            counts[size_t(idx)] = c;
            self(self, idx + 1, rem - c);
        }
    };
    rec(rec, 0, n);
}

double edms_converse_eps(int64_t n, double d, double log_M, int m) {
    check_edms_args(n, d, m);
    double t = log_M + log_ball_fraction(n, d, m);
    if (t >= 0.0) return 0.0;
    return -std::expm1(t);
}

double edms_converse_log_m(int64_t n, double d, double eps, int m) {
    check_edms_args(n, d, m);
    if (!(eps > 0.0 && eps < 1.0)) throw_domain("edms_converse: eps outside (0,1)");
    return std::max(0.0, std::log1p(-eps) - log_ball_fraction(n, d, m));
}

double edms_ach_eps(int64_t n, double d, double log_M, int m) {
    check_edms_args(n, d, m);
    return std::exp(log_pow1m(log_ball_fraction(n, d, m), log_M));
}

double edms_ach_log_m(int64_t n, double d, double eps, int m) {
    check_edms_args(n, d, m);
    if (!(eps > 0.0 && eps < 1.0)) throw_domain("edms_ach: eps outside (0,1)");
    double log_w = log_ball_fraction(n, d, m);
    if (log_w >= -1e-12) return 0.0;
    double ln_neg_l1p = log_w > -36.0 ? std::log(-std::log1p(-std::exp(log_w)))
                                      : log_w + std::log1p(0.5 * std::exp(log_w));
    return std::max(0.0, std::log(std::log(1.0 / eps)) - ln_neg_l1p);
}

double dms_converse_tilted_eps(const std::vector<double>& pmf, int64_t n, double d, double log_M) {
    SourceModel src{Dms{pmf}};
    SumDist sum = convolve_iid(src.tilted_info_dist(d), n);
    return converse_tilted(sum, log_M);
}

double dms_converse_ht_log_m(const std::vector<double>& pmf, int64_t n, double d, double eps,
                             double budget) {
    const int m = int(pmf.size());
    if (n < 1 || m < 2) throw_domain("dms_converse_ht: need n >= 1, m >= 2");
    if (!(d >= 0.0 && d < 1.0 - pmf[0])) throw_domain("dms_converse_ht: d outside [0, 1-P(1))");
    if (!(eps > 0.0 && eps < 1.0)) throw_domain("dms_converse_ht: eps outside (0,1)");

    std::vector<double> lnp(pmf.size());
    for (size_t a = 0; a < pmf.size(); ++a) lnp[a] = std::log(pmf[a]);

    // Per type: string log-probability and log count of strings.
    std::vector<std::pair<double, double>> types;  // (ln p^k, ln multinomial)
    types.reserve(size_t(std::min(budget, type_count(n, m))) + 1);
    std::vector<double> lg(size_t(n) + 2);
    for (size_t i = 0; i < lg.size(); ++i) lg[i] = std::lgamma(double(i) + 1.0);
    for_each_type(
        n, m,
        [&](const std::vector<int64_t>& k) {
            double lp = 0.0, lmult = lg[size_t(n)];
            for (size_t a = 0; a < k.size(); ++a) {
                lp += double(k[a]) * lnp[a];
                lmult -= lg[size_t(k[a])];
            }
            types.emplace_back(lp, lmult);
        },
        budget);

    // Most probable strings first; equal-probability types form one group.
    std::sort(types.begin(), types.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    const double target = 1.0 - eps;
    double cum = 0.0;
    double ln_count = kNegInf;  // strings fully accepted by the test
    size_t i = 0;
    while (i < types.size()) {
        // Gather the tie group.
        size_t j = i;
        double lp = types[i].first;
        LogSum group_count;
        while (j < types.size() &&
               types[j].first >= lp - 1e-12 * (1.0 + std::fabs(lp))) {
            group_count.add(types[j].second);
            ++j;
        }
        double group_mass = std::exp(lp + group_count.ln());
        if (cum + group_mass <= target + 1e-14) {
            cum += group_mass;
            ln_count = log_add(ln_count, group_count.ln());
            i = j;
        } else {
            // Randomized acceptance of the boundary group, proportional over
            // its strings.
            double alpha = std::max(0.0, (target - cum) / group_mass);
            if (alpha > 0.0)
                ln_count = log_add(ln_count, std::log(alpha) + group_count.ln());
            break;
        }
    }
    return ln_count - log_hamming_ball(n, floor_nd(n, d), m).ln;
}

namespace {

// Largest-remainder rounding of shares summing to total.
std::vector<int64_t> largest_remainder(const std::vector<double>& shares, int64_t total) {
    std::vector<int64_t> out(shares.size());
    std::vector<std::pair<double, size_t>> rem(shares.size());
    int64_t sum = 0;
    for (size_t i = 0; i < shares.size(); ++i) {
        double f = std::floor(shares[i]);
        out[i] = int64_t(std::max(0.0, f));
        sum += out[i];
        rem[i] = {shares[i] - f, i};
    }
    std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    size_t idx = 0;
    while (sum < total) {
        out[rem[idx % rem.size()].second] += 1;
        ++sum;
        ++idx;
    }
    idx = 0;
    std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    while (sum > total) {
        size_t i = rem[idx % rem.size()].second;
        if (out[i] > 0) {
            out[i] -= 1;
            --sum;
        }
        ++idx;
    }
    return out;
}

// Letter-allocation table for one source type: t[a][b] = number of positions
// holding source letter a that receive reproduction letter b.
struct Allocation {
    int me;                              // reproduction letters in use
    int m;                               // source letters
    std::vector<int64_t> row_target;     // k_a
    std::vector<int64_t> col_target;     // t*_b
    int64_t diag_min = 0;                // sum_b t[b][b] >= diag_min
    std::vector<std::vector<int64_t>> t;

    int64_t diag_sum() const {
        int64_t s = 0;
        for (int b = 0; b < me; ++b) s += t[size_t(b)][size_t(b)];
        return s;
    }

    double log_product(const std::vector<double>& lg) const {
        double v = 0.0;
        for (int a = 0; a < m; ++a) {
            v += lg[size_t(row_target[size_t(a)])];
            for (int b = 0; b < me; ++b) v -= lg[size_t(t[size_t(a)][size_t(b)])];
        }
        return v;
    }
};

// Repair column sums by moving units between two columns inside one row;
// rows stay exact. Returns false when stuck.
bool repair_columns(Allocation& al) {
    for (int guard = 0; guard < 4096; ++guard) {
        int b_plus = -1, b_minus = -1;
        std::vector<int64_t> colsum(size_t(al.me), 0);
        for (int a = 0; a < al.m; ++a)
            for (int b = 0; b < al.me; ++b) colsum[size_t(b)] += al.t[size_t(a)][size_t(b)];
        for (int b = 0; b < al.me; ++b) {
            if (colsum[size_t(b)] > al.col_target[size_t(b)]) b_plus = b;
            if (colsum[size_t(b)] < al.col_target[size_t(b)]) b_minus = b;
        }
        if (b_plus < 0 && b_minus < 0) return true;
        if (b_plus < 0 || b_minus < 0) return false;  // totals disagree; cannot happen
        // Pick the row where the move costs least in the counting product.
        int best_a = -1;
        double best_gain = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < al.m; ++a) {
            int64_t from = al.t[size_t(a)][size_t(b_plus)];
            if (from <= 0) continue;
            double gain = std::log(double(from)) -
                          std::log(double(al.t[size_t(a)][size_t(b_minus)] + 1));
            if (gain > best_gain) {
                best_gain = gain;
                best_a = a;
            }
        }
        if (best_a < 0) return false;
        al.t[size_t(best_a)][size_t(b_plus)] -= 1;
        al.t[size_t(best_a)][size_t(b_minus)] += 1;
    }
    return false;
}

// Raise the diagonal to diag_min with row/column-preserving 2x2 rotations.
bool repair_diagonal(Allocation& al) {
    for (int guard = 0; guard < 4096 && al.diag_sum() < al.diag_min; ++guard) {
        bool moved = false;
        double best_gain = -std::numeric_limits<double>::infinity();
        int bb = -1, bp = -1, ba = -1;
        for (int b = 0; b < al.me && !moved; ++b) {
            for (int bprime = 0; bprime < al.me; ++bprime) {
                if (bprime == b || al.t[size_t(b)][size_t(bprime)] <= 0) continue;
                for (int a = 0; a < al.m; ++a) {
                    if (a == b || al.t[size_t(a)][size_t(b)] <= 0) continue;
                    // t[b][b]+1, t[b][b']-1, t[a][b]-1, t[a][b']+1
                    // (diag +1, or +2 when a == b' lands on that diagonal)
                    double gain = std::log(double(al.t[size_t(b)][size_t(bprime)])) -
                                  std::log(double(al.t[size_t(b)][size_t(b)] + 1)) +
                                  std::log(double(al.t[size_t(a)][size_t(b)])) -
                                  std::log(double(al.t[size_t(a)][size_t(bprime)] + 1));
                    if (gain > best_gain) {
                        best_gain = gain;
                        bb = b;
                        bp = bprime;
                        ba = a;
                    }
                }
            }
        }
        if (bb < 0) return false;
        al.t[size_t(bb)][size_t(bb)] += 1;
        al.t[size_t(bb)][size_t(bp)] -= 1;
        al.t[size_t(ba)][size_t(bb)] -= 1;
        al.t[size_t(ba)][size_t(bp)] += 1;
    }
    return al.diag_sum() >= al.diag_min;
}

// Hill-climb on 2x2 rotations that keep all constraints.
void hill_climb(Allocation& al, int max_moves) {
    for (int moves = 0; moves < max_moves; ++moves) {
        double best_gain = 1e-12;
        int ba1 = -1, bb1 = -1, ba2 = -1, bb2 = -1;
        for (int a1 = 0; a1 < al.m; ++a1) {
            for (int b1 = 0; b1 < al.me; ++b1) {
                if (al.t[size_t(a1)][size_t(b1)] <= 0) continue;
                for (int a2 = 0; a2 < al.m; ++a2) {
                    if (a2 == a1) continue;
                    for (int b2 = 0; b2 < al.me; ++b2) {
                        if (b2 == b1 || al.t[size_t(a2)][size_t(b2)] <= 0) continue;
                        // t[a1][b1]-1, t[a1][b2]+1, t[a2][b1]+1, t[a2][b2]-1
                        int64_t diag_delta = 0;
                        if (a1 == b1) diag_delta -= 1;
                        if (a1 == b2 && b2 < al.me) diag_delta += 1;
                        if (a2 == b1 && b1 < al.me) diag_delta += 1;
                        if (a2 == b2) diag_delta -= 1;
                        if (al.diag_sum() + diag_delta < al.diag_min) continue;
                        double gain = std::log(double(al.t[size_t(a1)][size_t(b1)])) -
                                      std::log(double(al.t[size_t(a1)][size_t(b2)] + 1)) +
                                      std::log(double(al.t[size_t(a2)][size_t(b2)])) -
                                      std::log(double(al.t[size_t(a2)][size_t(b1)] + 1));
                        if (gain > best_gain) {
                            best_gain = gain;
                            ba1 = a1;
                            bb1 = b1;
                            ba2 = a2;
                            bb2 = b2;
                        }
                    }
                }
            }
        }
        if (ba1 < 0) return;
        al.t[size_t(ba1)][size_t(bb1)] -= 1;
        al.t[size_t(ba1)][size_t(bb2)] += 1;
        al.t[size_t(ba2)][size_t(bb1)] += 1;
        al.t[size_t(ba2)][size_t(bb2)] -= 1;
    }
}

}  // namespace

DmsCcAch::DmsCcAch(const std::vector<double>& pmf, int64_t n, double d, double budget) {
    const int m = int(pmf.size());
    if (n < 1 || m < 2) throw_domain("dms_cc_ach: need n >= 1, m >= 2");
    if (!(d > 0.0 && d < 1.0 - pmf[0])) throw_domain("dms_cc_ach: d outside (0, 1-P(1))");

    WaterLevel w = dms_water_level(pmf, d);
    const int me = w.m_eta;

    // Codeword composition: rounded n * P_Y*(b).
    std::vector<double> shares(static_cast<size_t>(me));
    for (int b = 0; b < me; ++b) shares[size_t(b)] = double(n) * w.p_ystar[size_t(b)];
    t_star_ = largest_remainder(shares, n);

    std::vector<double> lg(size_t(n) + 2);
    for (size_t i = 0; i < lg.size(); ++i) lg[i] = std::lgamma(double(i) + 1.0);
    double ln_comp = lg[size_t(n)];
    for (int b = 0; b < me; ++b) ln_comp -= lg[size_t(t_star_[size_t(b)])];

    std::vector<double> lnp(pmf.size());
    for (size_t a = 0; a < pmf.size(); ++a) lnp[a] = std::log(pmf[a]);

    const int64_t diag_min = int64_t(std::ceil(double(n) * (1.0 - d) - 1e-9));

    for_each_type(
        n, m,
        [&](const std::vector<int64_t>& k) {
            double lp = 0.0, lmult = lg[size_t(n)];
            for (size_t a = 0; a < k.size(); ++a) {
                lp += double(k[a]) * lnp[a];
                lmult -= lg[size_t(k[a])];
            }
            log_weight_.push_back(lmult + lp);

            // Continuous allocation seed around the optimal test channel.
            Allocation al;
            al.m = m;
            al.me = me;
            al.row_target.assign(k.begin(), k.end());
            al.col_target = t_star_;
            al.diag_min = diag_min;
            al.t.assign(size_t(m), std::vector<int64_t>(size_t(me), 0));
            double S = 0.0;  // sum of (k_i - n P(i))/n over inactive letters
            for (int a = me; a < m; ++a) S += double(k[size_t(a)]) / double(n) - pmf[size_t(a)];
            for (int a = 0; a < m; ++a) {
                double delta_a = double(k[size_t(a)]) / double(n) - pmf[size_t(a)];
                std::vector<double> row(static_cast<size_t>(me));
                for (int b = 0; b < me; ++b) {
                    double corr = delta_a / double(me);
                    if (a < me) {
                        corr += (a == b ? S / double(me * me)
                                        : -S / double(me * me * (me - 1)));
                    }
                    row[size_t(b)] =
                        w.p_x_given_ystar[size_t(a)][size_t(b)] * double(t_star_[size_t(b)]) +
                        corr * double(n);
                }
                // Row sums must hit k_a exactly.
                auto r = largest_remainder(row, k[size_t(a)]);
                al.t[size_t(a)] = std::move(r);
            }

            double lb = kNegInf;
            if (repair_columns(al) && repair_diagonal(al)) {
                hill_climb(al, 10000);
                lb = std::min(0.0, al.log_product(lg) - ln_comp);
            }
            log_ball_.push_back(lb);
        },
        budget);
}

double DmsCcAch::eps(double log_M) const {
    LogSum acc;
    for (size_t i = 0; i < log_weight_.size(); ++i) {
        double f = log_pow1m(log_ball_[i], log_M);
        if (std::isinf(f) && f < 0) continue;
        acc.add(log_weight_[i] + f);
    }
    return std::min(1.0, std::exp(acc.ln()));
}

}  // namespace dms
}  // namespace rdb
