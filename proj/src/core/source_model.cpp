#include "source_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "gaussian.hpp"
#include "optimize.hpp"

namespace rdb {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

double TiltedInfoDist::mean() const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.prob * a.value_nats;
    return m;
}

double TiltedInfoDist::variance() const {
    double m = mean();
    double v = 0.0;
    for (const auto& a : atoms) v += a.prob * (a.value_nats - m) * (a.value_nats - m);
    return v;
}

SourceModel::SourceModel(Bms b) : v_(b) {
    if (!(b.p > 0.0 && b.p <= 0.5)) throw_domain("BMS: need 0 < p <= 1/2");
}

SourceModel::SourceModel(Dms d) : v_(std::move(d)) {
    const auto& pmf = std::get<Dms>(v_).pmf;
    if (pmf.size() < 2) throw_domain("DMS: need at least two letters");
    double sum = 0.0;
    for (size_t i = 0; i < pmf.size(); ++i) {
        if (!(pmf[i] > 0.0)) throw_domain("DMS: pmf must be strictly positive");
        if (i > 0 && pmf[i] > pmf[i - 1] + 1e-15)
            throw_domain("DMS: pmf must be sorted nonincreasing");
        sum += pmf[i];
    }
    if (std::fabs(sum - 1.0) > 1e-12) throw_domain("DMS: pmf must sum to 1");
}

SourceModel::SourceModel(Bes b) : v_(b) {
    if (!(b.delta >= 0.0 && b.delta < 1.0)) throw_domain("BES: need 0 <= delta < 1");
}

SourceModel::SourceModel(Gms g) : v_(g) {
    if (!(g.sigma2 > 0.0)) throw_domain("GMS: need sigma2 > 0");
}

int SourceModel::alphabet_size() const {
    if (as_dms()) return int(as_dms()->pmf.size());
    if (as_gms()) return 0;
    return 2;
}

std::string SourceModel::describe() const {
    std::ostringstream os;
    os.precision(12);
    if (const Bms* b = as_bms()) {
        os << "bms(p=" << b->p << ")";
    } else if (const Dms* d = as_dms()) {
        os << "dms(pmf=[";
        for (size_t i = 0; i < d->pmf.size(); ++i) os << (i ? "," : "") << d->pmf[i];
        os << "])";
    } else if (const Bes* b = as_bes()) {
        os << "bes(delta=" << b->delta << ")";
    } else {
        os << "gms(sigma2=" << as_gms()->sigma2 << ")";
    }
    return os.str();
}

std::pair<double, double> SourceModel::d_range() const {
    if (const Bms* b = as_bms()) return {0.0, b->p};
    if (const Dms* d = as_dms()) return {0.0, 1.0 - d->pmf[0]};
    if (const Bes* b = as_bes()) return {0.5 * b->delta, 0.5};
    return {0.0, as_gms()->sigma2};
}

WaterLevel dms_water_level(const std::vector<double>& pmf, double d) {
    const int m = int(pmf.size());
    if (!(d > 0.0 && d < 1.0 - pmf[0])) throw_domain("dms_water_level: d outside (0, 1-P(1))");

    // Scan m_eta from m down to 2: eta = (d - sum_{a>m_eta} P(a)) / (m_eta - 1)
    // must satisfy P(m_eta) > eta >= P(m_eta+1). The first consistent pair wins.
    double tail = 0.0;  // sum of P(a) for a > m_eta
    for (int me = m; me >= 2; --me) {
        double eta = (d - tail) / double(me - 1);
        double next = (me < m) ? pmf[size_t(me)] : 0.0;
        if (eta >= -1e-15 && pmf[size_t(me - 1)] > eta && eta >= next - 1e-15) {
            WaterLevel w;
            w.eta = std::max(eta, 0.0);
            w.m_eta = me;
            w.p_ystar.assign(size_t(m), 0.0);
            double denom = 1.0 - d - w.eta;
            for (int b = 0; b < me; ++b) w.p_ystar[size_t(b)] = (pmf[size_t(b)] - w.eta) / denom;
            w.p_x_given_ystar.assign(size_t(m), std::vector<double>(size_t(me), 0.0));
            for (int a = 0; a < m; ++a) {
                for (int b = 0; b < me; ++b) {
                    if (a >= me) {
                        w.p_x_given_ystar[size_t(a)][size_t(b)] = pmf[size_t(a)];
                    } else {
                        w.p_x_given_ystar[size_t(a)][size_t(b)] = (a == b) ? 1.0 - d : w.eta;
                    }
                }
            }
            return w;
        }
        tail += pmf[size_t(me - 1)];
    }
    throw_internal("dms_water_level: no consistent (eta, m_eta) pair");
}

double SourceModel::rate_distortion(double d) const {
    if (const Bms* b = as_bms()) {
        if (d < 0.0) throw_domain("rate_distortion: d < 0");
        if (d >= b->p) return 0.0;
        return binary_entropy(b->p) - binary_entropy(d);
    }
    if (const Dms* s = as_dms()) {
        if (d < 0.0) throw_domain("rate_distortion: d < 0");
        const auto& pmf = s->pmf;
        if (d >= 1.0 - pmf[0]) return 0.0;
        double H = 0.0;
        for (double p : pmf) H -= p * std::log(p);
        if (d == 0.0) return H;
        WaterLevel w = dms_water_level(pmf, d);
        double r = 0.0;
        for (int a = 0; a < w.m_eta; ++a) r -= pmf[size_t(a)] * std::log(pmf[size_t(a)]);
        r += (1.0 - d) * std::log1p(-d);
        if (w.eta > 0.0) r += double(w.m_eta - 1) * w.eta * std::log(w.eta);
        return std::max(r, 0.0);
    }
    if (const Bes* b = as_bes()) {
        double dl = 0.5 * b->delta;
        if (d < dl) throw_domain("rate_distortion: BES needs d >= delta/2");
        if (d >= 0.5) return 0.0;
        double arg = (d - dl) / (1.0 - b->delta);
        return (1.0 - b->delta) * (kLn2 - binary_entropy(arg));
    }
    const Gms* g = as_gms();
    if (!(d > 0.0)) throw_domain("rate_distortion: GMS needs d > 0");
    if (d >= g->sigma2) return 0.0;
    return 0.5 * std::log(g->sigma2 / d);
}

double SourceModel::lambda_star(double d) const {
    auto [dmin, dmax] = d_range();
    if (!(d > dmin && d < dmax)) throw_domain("lambda_star: d outside (d_min, d_max)");
    if (as_bms()) return std::log((1.0 - d) / d);
    if (const Dms* s = as_dms()) {
        WaterLevel w = dms_water_level(s->pmf, d);
        return std::log((1.0 - d) / w.eta);
    }
    if (const Bes* b = as_bes()) {
        double dl = 0.5 * b->delta;
        return std::log((1.0 - dl - d) / (d - dl));
    }
    return 1.0 / (2.0 * d);
}

double SourceModel::dispersion(double d) const {
    if (const Bms* b = as_bms()) {
        if (!(d >= 0.0 && d < b->p)) throw_domain("dispersion: d outside [0, p)");
        double l = std::log((1.0 - b->p) / b->p);
        return b->p * (1.0 - b->p) * l * l;
    }
    if (const Dms* s = as_dms()) {
        if (!(d >= 0.0 && d < 1.0 - s->pmf[0])) throw_domain("dispersion: d outside [0, 1-P(1))");
        double cap = std::numeric_limits<double>::infinity();
        if (d > 0.0) cap = std::log(1.0 / dms_water_level(s->pmf, d).eta);
        double m1 = 0.0, m2 = 0.0;
        for (double p : s->pmf) {
            double v = std::min(-std::log(p), cap);
            m1 += p * v;
            m2 += p * v * v;
        }
        return std::max(0.0, m2 - m1 * m1);
    }
    if (as_bes()) {
        double l = lambda_star(d);
        double c = std::log(std::cosh(0.5 * l));
        const double delta = as_bes()->delta;
        return delta * (1.0 - delta) * c * c + 0.25 * delta * l * l;
    }
    auto [dmin, dmax] = d_range();
    if (!(d > dmin && d < dmax)) throw_domain("dispersion: d outside (0, sigma2)");
    return 0.5;
}

TiltedInfoDist SourceModel::tilted_info_dist(double d) const {
    if (as_gms()) throw_domain("tilted_info_dist: unsupported for the continuous source");
    TiltedInfoDist out;
    if (const Bms* b = as_bms()) {
        if (!(d >= 0.0 && d < b->p)) throw_domain("tilted_info_dist: d outside [0, p)");
        double hd = binary_entropy(d);
        if (b->p == 0.5) {
            out.atoms.push_back({kLn2 - hd, 1.0});
        } else {
            out.atoms.push_back({-std::log(1.0 - b->p) - hd, 1.0 - b->p});
            out.atoms.push_back({-std::log(b->p) - hd, b->p});
        }
        return out;
    }
    if (const Dms* s = as_dms()) {
        if (!(d >= 0.0 && d < 1.0 - s->pmf[0]))
            throw_domain("tilted_info_dist: d outside [0, 1-P(1))");
        if (d == 0.0) {
            for (double p : s->pmf) out.atoms.push_back({-std::log(p), p});
            return out;
        }
        WaterLevel w = dms_water_level(s->pmf, d);
        double base = (1.0 - d) * std::log1p(-d) + d * std::log(w.eta);
        double cap = std::log(1.0 / w.eta);
        for (double p : s->pmf)
            out.atoms.push_back({base + std::min(-std::log(p), cap), p});
        return out;
    }
    const Bes* b = as_bes();
    double dl = 0.5 * b->delta;
    if (!(d > dl && d < 0.5)) throw_domain("tilted_info_dist: d outside (delta/2, 1/2)");
    double l = lambda_star(d);
    double match = std::log(2.0) - std::log1p(std::exp(-l));
    if (b->delta == 0.0) {
        out.atoms.push_back({-l * d + match, 1.0});
        return out;
    }
    out.atoms.push_back({-l * d + match, 1.0 - b->delta});
    out.atoms.push_back({-l * d + l, 0.5 * b->delta});
    out.atoms.push_back({-l * d, 0.5 * b->delta});
    return out;
}

RdPoint SourceModel::rd_point(double d) const {
    RdPoint pt;
    pt.d = d;
    pt.rate_nats = rate_distortion(d);
    pt.lambda_star = lambda_star(d);
    pt.V_nats2 = dispersion(d);
    if (const Dms* s = as_dms()) {
        WaterLevel w = dms_water_level(s->pmf, d);
        pt.eta = w.eta;
        pt.m_eta = w.m_eta;
    }
    return pt;
}

double SourceModel::distortion_rate(double rate_nats) const {
    if (const Gms* g = as_gms()) {
        if (!(rate_nats > 0.0)) throw_domain("distortion_rate: need R > 0");
        return g->sigma2 * std::exp(-2.0 * rate_nats);
    }
    auto [dmin, dmax] = d_range();
    double lo = dmin + 1e-13 * (dmax - dmin);
    double hi = dmax - 1e-13 * (dmax - dmin);
    double rlo = rate_distortion(hi);  // smallest rate in range
    double rhi = rate_distortion(lo);  // largest
    if (!(rate_nats > rlo && rate_nats < rhi))
        throw_domain("distortion_rate: rate outside (R(d_max-), R(d_min+))");
    // rate_distortion is decreasing in d; find d with R(d) <= rate.
    double d = bisect_nonincreasing([&](double x) { return rate_distortion(x); }, lo, hi,
                                    rate_nats, 1e-13 * (dmax - dmin));
    return d;
}

double SourceModel::distortion_dispersion(double rate_nats) const {
    if (const Gms* g = as_gms()) {
        double D = g->sigma2 * std::exp(-2.0 * rate_nats);
        double Dp = -2.0 * D;
        return Dp * Dp * 0.5;
    }
    double d = distortion_rate(rate_nats);
    double l = lambda_star(d);  // D'(R) = -1/lambda*
    return dispersion(d) / (l * l);
}

PlanResult required_blocklength(const SourceModel& src, PlanMode mode, double d_or_rate,
                                double eta, double eps) {
    if (!(eta > 0.0)) throw_domain("required_blocklength: eta must be > 0");
    if (!(eps > 0.0 && eps < 1.0)) throw_domain("required_blocklength: eps must lie in (0,1)");
    double source_factor;
    if (mode == PlanMode::Rate) {
        double d = d_or_rate;
        double R = src.rate_distortion(d);
        if (!(R > 0.0)) throw_domain("required_blocklength: R(d) = 0 at this distortion");
        source_factor = src.dispersion(d) / (R * R);
    } else {
        double R = d_or_rate;
        double D = src.distortion_rate(R);
        source_factor = src.distortion_dispersion(R) / (D * D);
    }
    double qe = q_inv(eps);
    double spec_factor = (qe / eta) * (qe / eta);
    PlanResult res;
    res.source_factor = source_factor;
    res.spec_factor = spec_factor;
    res.zero_dispersion = source_factor == 0.0;
    res.n_estimate = source_factor * spec_factor;
    return res;
}

}  // namespace rdb
