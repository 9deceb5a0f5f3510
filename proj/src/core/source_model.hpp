#ifndef RDB_CORE_SOURCE_MODEL_HPP
#define RDB_CORE_SOURCE_MODEL_HPP

#include <string>
#include <variant>
#include <vector>

namespace rdb {

// Binary memoryless source with bias p <= 1/2, bit error rate distortion.
struct Bms {
    double p;
};

// Finite-alphabet memoryless source with symbol error rate distortion.
// pmf is sorted nonincreasing and strictly positive.
struct Dms {
    std::vector<double> pmf;
};

// Equiprobable binary source observed through a binary erasure channel with
// erasure rate delta; distortion is bit error rate against the pre-erasure
// bits.
struct Bes {
    double delta;
};

// Gaussian memoryless source, mean-square error distortion.
struct Gms {
    double sigma2;
};

// One atom of the per-letter d-tilted information distribution.
struct TiltedAtom {
    double value_nats;
    double prob;
};

struct TiltedInfoDist {
    std::vector<TiltedAtom> atoms;
    double mean() const;
    double variance() const;
};

// Reverse-waterfilling solution for the DMS.
struct WaterLevel {
    double eta;
    int m_eta;
    std::vector<double> p_ystar;                     // reproduction marginal, length m (zeros past m_eta)
    std::vector<std::vector<double>> p_x_given_ystar;  // [a][b], b < m_eta
};

// A rate-distortion operating point with the quantities the bounds need.
struct RdPoint {
    double d;
    double rate_nats;
    double lambda_star;   // -R'(d), nats
    double eta = 0.0;     // DMS water level (0 elsewhere)
    int m_eta = 0;        // DMS active letters (0 elsewhere)
    double V_nats2;       // rate-dispersion
};

class SourceModel {
  public:
    explicit SourceModel(Bms b);
    explicit SourceModel(Dms d);
    explicit SourceModel(Bes b);
    explicit SourceModel(Gms g);

    const Bms* as_bms() const { return std::get_if<Bms>(&v_); }
    const Dms* as_dms() const { return std::get_if<Dms>(&v_); }
    const Bes* as_bes() const { return std::get_if<Bes>(&v_); }
    const Gms* as_gms() const { return std::get_if<Gms>(&v_); }

    bool is_discrete() const { return !as_gms(); }
    // Reproduction alphabet size per symbol (2 for BMS/BES, m for DMS; 0 for GMS).
    int alphabet_size() const;
    std::string describe() const;

    // (d_min, d_max): the open interval of distortion levels with
    // 0 < R(d) < R(d_min+).
    std::pair<double, double> d_range() const;

    // Rate-distortion function in nats; 0 for d >= d_max. For the discrete
    // sources d = 0 returns the entropy (lossless). GMS requires d > 0.
    double rate_distortion(double d) const;

    // -R'(d) in nats, by the per-source closed form.
    double lambda_star(double d) const;

    // Rate-dispersion V(d) in nats^2.
    double dispersion(double d) const;

    // Per-letter d-tilted information distribution (discrete sources only;
    // the Gaussian case is continuous and handled by its own bounds).
    TiltedInfoDist tilted_info_dist(double d) const;

    RdPoint rd_point(double d) const;

    // Inverse of rate_distortion on (d_min, d_max); rate in nats.
    double distortion_rate(double rate_nats) const;

    // Distortion-dispersion (D'(R))^2 V(D(R)).
    double distortion_dispersion(double rate_nats) const;

  private:
    std::variant<Bms, Dms, Bes, Gms> v_;
};

// Reverse waterfilling for a DMS at distortion d in (0, 1 - pmf[0]).
WaterLevel dms_water_level(const std::vector<double>& pmf, double d);

enum class PlanMode { Rate, Distortion };

struct PlanResult {
    double n_estimate;
    bool zero_dispersion;
    double source_factor;  // V/R^2 (rate mode) or curlyV/D^2 (distortion mode)
    double spec_factor;    // (Qinv(eps)/eta)^2
};

// Blocklength needed to hold a relative excess eta at excess probability eps:
// rate mode works at distortion d, distortion mode at rate R (nats).
PlanResult required_blocklength(const SourceModel& src, PlanMode mode, double d_or_rate,
                                double eta, double eps);

}  // namespace rdb

#endif  // RDB_CORE_SOURCE_MODEL_HPP
