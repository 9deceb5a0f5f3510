#include "oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <vector>

#include "bounds_dms.hpp"
#include "combinatorics.hpp"
#include "errors.hpp"
#include "log_real.hpp"

namespace rdb {
namespace oracle {

namespace {

// Inverse-cdf sampling from 53 uniform bits; avoids the library
// distributions so streams are reproducible everywhere.
double next_uniform(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

int sample_pmf(const std::vector<double>& pmf, std::mt19937_64& rng) {
    double u = next_uniform(rng);
    double cum = 0.0;
    for (size_t i = 0; i < pmf.size(); ++i) {
        cum += pmf[i];
        if (u < cum) return int(i);
    }
    return int(pmf.size()) - 1;
}

int sample_uniform_letter(int m, std::mt19937_64& rng) {
    int v = int(next_uniform(rng) * double(m));
    return std::min(v, m - 1);
}

}  // namespace

int64_t brute_force_mstar(const SourceModel& src, int64_t n, double d, double eps) {
    const Bms* b = src.as_bms();
    if (!b) throw_domain("brute_force_mstar: binary sources only");
    if (n < 1 || n > 4) throw_resource("brute_force_mstar: n capped at 4");
    if (!(eps >= 0.0 && eps < 1.0)) throw_domain("brute_force_mstar: eps outside [0,1)");

    const int size = 1 << n;
    const int64_t radius = floor_nd(n, d);
    std::vector<double> prob(static_cast<size_t>(size));
    for (int x = 0; x < size; ++x) {
        int w = std::popcount(unsigned(x));
        prob[size_t(x)] = std::pow(b->p, w) * std::pow(1.0 - b->p, double(n - w));
    }
    // Coverage bit mask per codeword.
    std::vector<uint32_t> covers(static_cast<size_t>(size), 0);
    for (int c = 0; c < size; ++c) {
        for (int x = 0; x < size; ++x) {
            if (std::popcount(unsigned(c ^ x)) <= radius) covers[size_t(c)] |= 1u << x;
        }
    }
    const double target = 1.0 - eps - 1e-12;
    for (int m = 1; m <= size; ++m) {
        // All codebooks of size m, by combinations.
        std::vector<int> idx(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) idx[size_t(i)] = i;
        while (true) {
            uint32_t mask = 0;
            for (int i = 0; i < m; ++i) mask |= covers[size_t(idx[size_t(i)])];
            double covered = 0.0;
            for (int x = 0; x < size; ++x)
                if (mask & (1u << x)) covered += prob[size_t(x)];
            if (covered >= target) return m;
            // next combination
            int i = m - 1;
            while (i >= 0 && idx[size_t(i)] == size - m + i) --i;
            if (i < 0) break;
            idx[size_t(i)] += 1;
            for (int j = i + 1; j < m; ++j) idx[size_t(j)] = idx[size_t(j - 1)] + 1;
        }
    }
    throw_internal("brute_force_mstar: full codebook failed to cover");
}

McResult mc_random_coding(const SourceModel& src, CodebookLaw law, int64_t n, int64_t m_codewords,
                          double d, int64_t trials, uint64_t seed) {
    if (trials < 10000) throw_domain("mc_random_coding: need at least 1e4 trials");
    if (n < 1 || m_codewords < 1) throw_domain("mc_random_coding: bad n or M");

    std::vector<double> pmf;
    int m_alpha = 2;
    double q_marginal = 0.5;
    if (const Bms* b = src.as_bms()) {
        pmf = {1.0 - b->p, b->p};
        if (law == CodebookLaw::RdMarginal) {
            if (!(d < b->p)) throw_domain("mc_random_coding: RD marginal needs d < p");
            q_marginal = (b->p - d) / (1.0 - 2.0 * d);
        }
    } else if (const Dms* s = src.as_dms()) {
        pmf = s->pmf;
        m_alpha = int(pmf.size());
        if (law == CodebookLaw::RdMarginal)
            throw_domain("mc_random_coding: RD marginal sampler implemented for BMS only");
    } else {
        throw_domain("mc_random_coding: discrete sources only");
    }

    const int64_t radius = floor_nd(n, d);
    const int64_t shard_size = 65536;
    int64_t excess = 0;
    std::vector<int> x(static_cast<size_t>(n));

    for (int64_t shard = 0, done = 0; done < trials; ++shard) {
        std::seed_seq seq{uint32_t(seed), uint32_t(seed >> 32), uint32_t(shard)};
        std::mt19937_64 rng(seq);
        int64_t batch = std::min(shard_size, trials - done);
        for (int64_t t = 0; t < batch; ++t) {
            for (int64_t i = 0; i < n; ++i) x[size_t(i)] = sample_pmf(pmf, rng);
            bool covered = false;
            for (int64_t c = 0; c < m_codewords; ++c) {
                int64_t mismatches = 0;
                for (int64_t i = 0; i < n; ++i) {
                    int y;
                    if (law == CodebookLaw::RdMarginal) {
                        y = next_uniform(rng) < q_marginal ? 1 : 0;
                    } else {
                        y = sample_uniform_letter(m_alpha, rng);
                    }
                    if (y != x[size_t(i)]) ++mismatches;
                }
                if (mismatches <= radius) covered = true;  // keep the stream length fixed
            }
            if (!covered) ++excess;
        }
        done += batch;
    }
    McResult r;
    r.trials = trials;
    r.eps_hat = double(excess) / double(trials);
    r.std_err = std::sqrt(std::max(r.eps_hat * (1.0 - r.eps_hat), 1e-300) / double(trials));
    return r;
}

LosslessMstar lossless_mstar(const SourceModel& src, int64_t n, double eps) {
    if (n < 1) throw_domain("lossless_mstar: n < 1");
    if (!(eps > 0.0 && eps < 1.0)) throw_domain("lossless_mstar: eps outside (0,1)");

    // Outcome classes of equal probability: (ln per-string prob, ln count).
    std::vector<std::pair<double, double>> groups;
    if (const Bms* b = src.as_bms()) {
        if (double(n) * std::log(2.0) > 52.0 * std::log(2.0))
            throw_resource("lossless_mstar: counts exceed integer-exact double range");
        for (int64_t w = 0; w <= n; ++w) {
            double lp = double(w) * std::log(b->p) + double(n - w) * std::log1p(-b->p);
            groups.emplace_back(lp, log_binomial(n, w));
        }
    } else if (const Dms* s = src.as_dms()) {
        if (double(n) * std::log(double(s->pmf.size())) > 52.0 * std::log(2.0))
            throw_resource("lossless_mstar: counts exceed integer-exact double range");
        std::vector<double> lnp(s->pmf.size());
        for (size_t a = 0; a < s->pmf.size(); ++a) lnp[a] = std::log(s->pmf[a]);
        std::vector<double> lg(size_t(n) + 2);
        for (size_t i = 0; i < lg.size(); ++i) lg[i] = std::lgamma(double(i) + 1.0);
        dms::for_each_type(n, int(s->pmf.size()), [&](const std::vector<int64_t>& k) {
            double lp = 0.0, lmult = lg[size_t(n)];
            for (size_t a = 0; a < k.size(); ++a) {
                lp += double(k[a]) * lnp[a];
                lmult -= lg[size_t(k[a])];
            }
            groups.emplace_back(lp, lmult);
        });
    } else {
        throw_domain("lossless_mstar: discrete sources only");
    }

    // Most probable strings first; classes with equal probability merge.
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    const double target = 1.0 - eps;
    double cum = 0.0;
    double count_before = 0.0;
    size_t i = 0;
    while (i < groups.size()) {
        size_t j = i;
        double lp = groups[i].first;
        LogSum cnt;
        while (j < groups.size() && groups[j].first >= lp - 1e-12 * (1.0 + std::fabs(lp))) {
            cnt.add(groups[j].second);
            ++j;
        }
        double group_count = std::exp(cnt.ln());
        double elem = std::exp(lp);
        double group_mass = elem * group_count;
        if (cum + group_mass < target - 1e-15) {
            cum += group_mass;
            count_before += group_count;
            i = j;
            continue;
        }
        // Boundary group: take just enough elements. Counts are exact
        // integers reached through lgamma, so round off the noise.
        double need = std::max(0.0, target - cum);
        double k_elems = std::ceil(need / elem - 1e-9);
        k_elems = std::max(1.0, std::min(k_elems, std::round(group_count)));
        double m_star = std::round(count_before + k_elems);
        double alpha = std::min(1.0, std::max(0.0, (need - (k_elems - 1.0) * elem) / elem));
        LosslessMstar out;
        out.m_star = m_star;
        out.log_beta = std::log(m_star - 1.0 + alpha);
        return out;
    }
    throw_internal("lossless_mstar: mass never reached the target");
}

}  // namespace oracle
}  // namespace rdb
