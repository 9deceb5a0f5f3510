#include "rdbounds.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "core/errors.hpp"
#include "core/oracle.hpp"
#include "core/solver.hpp"
#include "core/source_model.hpp"

namespace {

thread_local std::string g_last_error;

int set_error(rdb::ErrorKind kind, const std::string& what) {
    g_last_error = what;
    switch (kind) {
        case rdb::ErrorKind::Domain:
            return RDB_EDOMAIN;
        case rdb::ErrorKind::Resource:
            return RDB_ERESOURCE;
        case rdb::ErrorKind::Numeric:
            return RDB_ENUMERIC;
        case rdb::ErrorKind::Internal:
            return RDB_EINTERNAL;
    }
    return RDB_EINTERNAL;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        return RDB_OK;
    } catch (const rdb::Error& e) {
        return set_error(e.kind(), e.what());
    } catch (const std::exception& e) {
        return set_error(rdb::ErrorKind::Internal, e.what());
    }
}

rdb::EvalOptions to_options(const rdb_eval_opts* opts) {
    rdb::EvalOptions o;
    if (opts) {
        o.integer_m = opts->integer_m != 0;
        switch (opts->theta_mode) {
            case RDB_THETA_HALF_LOG_N:
                o.theta = rdb::ThetaMode::HalfLogN;
                break;
            case RDB_THETA_LOSSLESS:
                o.theta = rdb::ThetaMode::Lossless;
                break;
            case RDB_THETA_ENVELOPE:
                o.theta = rdb::ThetaMode::Envelope;
                break;
            default:
                o.theta = rdb::ThetaMode::Zero;
        }
    }
    return o;
}

rdb::ThetaMode to_theta(int mode) {
    rdb_eval_opts o{mode, 0};
    return to_options(&o).theta;
}

}  // namespace

struct rdb_source {
    rdb::SourceModel model;
    std::string description;
};

extern "C" {

const char* rdb_last_error(void) { return g_last_error.c_str(); }

const char* rdb_version(void) { return "0.1.0"; }

int rdb_source_bms(double p, rdb_source** out) {
    return guarded([&] {
        auto* s = new rdb_source{rdb::SourceModel{rdb::Bms{p}}, {}};
        s->description = s->model.describe();
        *out = s;
    });
}

int rdb_source_dms(const double* pmf, int m, rdb_source** out) {
    return guarded([&] {
        if (!pmf || m < 2) rdb::throw_domain("rdb_source_dms: need pmf with m >= 2");
        auto* s = new rdb_source{rdb::SourceModel{rdb::Dms{{pmf, pmf + m}}}, {}};
        s->description = s->model.describe();
        *out = s;
    });
}

int rdb_source_bes(double delta, rdb_source** out) {
    return guarded([&] {
        auto* s = new rdb_source{rdb::SourceModel{rdb::Bes{delta}}, {}};
        s->description = s->model.describe();
        *out = s;
    });
}

int rdb_source_gms(double sigma2, rdb_source** out) {
    return guarded([&] {
        auto* s = new rdb_source{rdb::SourceModel{rdb::Gms{sigma2}}, {}};
        s->description = s->model.describe();
        *out = s;
    });
}

void rdb_source_free(rdb_source* src) { delete src; }

const char* rdb_source_describe(const rdb_source* src) {
    return src ? src->description.c_str() : "";
}

int rdb_d_range(const rdb_source* src, double* d_min, double* d_max) {
    return guarded([&] {
        auto [lo, hi] = src->model.d_range();
        *d_min = lo;
        *d_max = hi;
    });
}

int rdb_rate_distortion(const rdb_source* src, double d, double* rate_nats) {
    return guarded([&] { *rate_nats = src->model.rate_distortion(d); });
}

int rdb_lambda_star(const rdb_source* src, double d, double* lambda_nats) {
    return guarded([&] { *lambda_nats = src->model.lambda_star(d); });
}

int rdb_dispersion(const rdb_source* src, double d, double* v_nats2) {
    return guarded([&] { *v_nats2 = src->model.dispersion(d); });
}

int rdb_distortion_rate(const rdb_source* src, double rate_nats, double* d) {
    return guarded([&] { *d = src->model.distortion_rate(rate_nats); });
}

int rdb_distortion_dispersion(const rdb_source* src, double rate_nats, double* v_out) {
    return guarded([&] { *v_out = src->model.distortion_dispersion(rate_nats); });
}

int rdb_tilted_info(const rdb_source* src, double d, double* values_nats, double* probs, int cap,
                    int* count) {
    return guarded([&] {
        rdb::TiltedInfoDist t = src->model.tilted_info_dist(d);
        *count = int(t.atoms.size());
        for (int i = 0; i < cap && i < *count; ++i) {
            values_nats[i] = t.atoms[size_t(i)].value_nats;
            probs[i] = t.atoms[size_t(i)].prob;
        }
    });
}

int rdb_required_blocklength(const rdb_source* src, int distortion_mode, double d_or_rate_nats,
                             double eta, double eps, double* n_estimate, int* zero_dispersion,
                             double* source_factor, double* spec_factor) {
    return guarded([&] {
        rdb::PlanResult r = rdb::required_blocklength(
            src->model, distortion_mode ? rdb::PlanMode::Distortion : rdb::PlanMode::Rate,
            d_or_rate_nats, eta, eps);
        *n_estimate = r.n_estimate;
        if (zero_dispersion) *zero_dispersion = r.zero_dispersion ? 1 : 0;
        if (source_factor) *source_factor = r.source_factor;
        if (spec_factor) *spec_factor = r.spec_factor;
    });
}

int rdb_bound_names(const rdb_source* src, char* buf, size_t cap, size_t* needed) {
    return guarded([&] {
        std::string joined;
        for (const auto& n : rdb::bound_names(src->model)) {
            if (!joined.empty()) joined += '\n';
            joined += n;
        }
        if (needed) *needed = joined.size();
        if (buf && cap > 0) {
            size_t n = std::min(cap - 1, joined.size());
            std::memcpy(buf, joined.data(), n);
            buf[n] = '\0';
        }
    });
}

int rdb_eval_rate_bound(const rdb_source* src, const char* bound, int64_t n, double d, double eps,
                        const rdb_eval_opts* opts, rdb_bound_value* out) {
    return guarded([&] {
        rdb::BoundValue v = rdb::eval_rate_bound(src->model, bound, n, d, eps, to_options(opts));
        std::snprintf(out->name, sizeof(out->name), "%s", v.name.c_str());
        out->kind = int(v.kind);
        out->log_m_nats = v.log_M_nats;
        out->rate_bits = v.rate_bits;
        auto it = v.diagnostics.find("eps_at_log_m");
        out->eps_at_log_m = it != v.diagnostics.end() ? it->second : std::nan("");
    });
}

int rdb_eval_excess_probability(const rdb_source* src, const char* bound, int64_t n, double d,
                                double log_m_nats, double* eps_out) {
    return guarded([&] { *eps_out = rdb::eval_eps_bound(src->model, bound, n, d, log_m_nats); });
}

int rdb_eval_distortion_bound(const rdb_source* src, const char* bound, int64_t n,
                              double rate_bits, double eps, const rdb_eval_opts* opts,
                              double* d_out) {
    return guarded([&] {
        double rate_nats = rate_bits * std::log(2.0);
        *d_out = rdb::eval_distortion_bound(src->model, bound, n, rate_nats, eps, to_options(opts));
    });
}

int rdb_gaussian_approx(const rdb_source* src, int64_t n, double d, double eps, int theta_mode,
                        double* rate_bits) {
    return guarded([&] {
        double nats = rdb::gaussian_approx_nats(src->model, n, d, eps, to_theta(theta_mode));
        *rate_bits = nats / std::log(2.0);
    });
}

int rdb_brute_force_mstar(const rdb_source* src, int64_t n, double d, double eps,
                          int64_t* m_star) {
    return guarded([&] { *m_star = rdb::oracle::brute_force_mstar(src->model, n, d, eps); });
}

int rdb_mc_random_coding(const rdb_source* src, int codebook_law, int64_t n, int64_t m_codewords,
                         double d, int64_t trials, uint64_t seed, double* eps_hat,
                         double* std_err) {
    return guarded([&] {
        auto law = codebook_law == RDB_CODEBOOK_RD_MARGINAL
                       ? rdb::oracle::CodebookLaw::RdMarginal
                       : rdb::oracle::CodebookLaw::Equiprobable;
        rdb::oracle::McResult r =
            rdb::oracle::mc_random_coding(src->model, law, n, m_codewords, d, trials, seed);
        *eps_hat = r.eps_hat;
        *std_err = r.std_err;
    });
}

int rdb_lossless_mstar(const rdb_source* src, int64_t n, double eps, double* m_star,
                       double* log_beta) {
    return guarded([&] {
        rdb::oracle::LosslessMstar r = rdb::oracle::lossless_mstar(src->model, n, eps);
        *m_star = r.m_star;
        *log_beta = r.log_beta;
    });
}

}  // extern "C"
