#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/combinatorics.hpp"
#include "core/errors.hpp"
#include "core/gaussian.hpp"
#include "core/source_model.hpp"

using namespace rdb;

namespace {
constexpr double kLn2 = 0.6931471805599453;
const std::vector<double> kQuadPmf = {1.0 / 3.0, 1.0 / 4.0, 1.0 / 4.0, 1.0 / 6.0};
}  // namespace

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(SourceModel{Bms{0.0}}, Error);
    CHECK_THROWS_AS(SourceModel{Bms{0.6}}, Error);
    CHECK_THROWS_AS(SourceModel{Bes{1.0}}, Error);
    CHECK_THROWS_AS(SourceModel{Gms{0.0}}, Error);
    CHECK_THROWS_AS((SourceModel{Dms{std::vector<double>{0.5, 0.5, 0.1}}}), Error);   // not a pmf
    CHECK_THROWS_AS((SourceModel{Dms{std::vector<double>{0.25, 0.5, 0.25}}}), Error); // not sorted
    CHECK_NOTHROW(SourceModel{Dms{kQuadPmf}});
}

TEST_CASE("distortion ranges") {
    CHECK(SourceModel{Bms{0.4}}.d_range() == std::pair{0.0, 0.4});
    CHECK(SourceModel{Gms{1.0}}.d_range() == std::pair{0.0, 1.0});
    auto [lo, hi] = SourceModel{Dms{kQuadPmf}}.d_range();
    CHECK(lo == 0.0);
    CHECK(hi == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(SourceModel{Bes{0.1}}.d_range() == std::pair{0.05, 0.5});
}

TEST_CASE("rate-distortion closed forms") {
    // GMS: half the log SNR.
    CHECK(SourceModel{Gms{1.0}}.rate_distortion(0.25) == doctest::Approx(kLn2).epsilon(1e-15));
    CHECK(SourceModel{Gms{1.0}}.rate_distortion(1.5) == 0.0);
    CHECK_THROWS_AS(SourceModel{Gms{1.0}}.rate_distortion(0.0), Error);

    // BMS: entropy difference.
    double expect = binary_entropy(0.4) - binary_entropy(0.11);
    CHECK(SourceModel{Bms{0.4}}.rate_distortion(0.11) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(expect / kLn2 == doctest::Approx(0.4711).epsilon(2e-4));
    CHECK(SourceModel{Bms{0.4}}.rate_distortion(0.5) == 0.0);

    // BES at delta = 0.1, d = 0.1.
    double bes_expect = 0.9 * (kLn2 - binary_entropy(1.0 / 18.0));
    CHECK(SourceModel{Bes{0.1}}.rate_distortion(0.1) ==
          doctest::Approx(bes_expect).epsilon(1e-12));
    CHECK(bes_expect / kLn2 == doctest::Approx(0.6214).epsilon(2e-4));

    // Lossless endpoints for the discrete models.
    CHECK(SourceModel{Bms{0.3}}.rate_distortion(0.0) ==
          doctest::Approx(binary_entropy(0.3)).epsilon(1e-14));
}

TEST_CASE("reverse waterfilling") {
    SUBCASE("symmetric quaternary") {
        WaterLevel w = dms_water_level({0.25, 0.25, 0.25, 0.25}, 0.3);
        CHECK(w.eta == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(w.m_eta == 4);
    }
    SUBCASE("quad pmf at d = 0.2") {
        WaterLevel w = dms_water_level(kQuadPmf, 0.2);
        // Defining inequalities: P(m_eta) > eta >= P(m_eta + 1).
        CHECK(kQuadPmf[size_t(w.m_eta - 1)] > w.eta);
        if (w.m_eta < 4) CHECK(w.eta >= kQuadPmf[size_t(w.m_eta)] - 1e-15);
        // Water-level equation: d = sum_{a > m_eta} P(a) + (m_eta - 1) eta.
        double tail = 0.0;
        for (int a = w.m_eta; a < 4; ++a) tail += kQuadPmf[size_t(a)];
        CHECK(tail + double(w.m_eta - 1) * w.eta == doctest::Approx(0.2).epsilon(1e-12));
    }
    SUBCASE("small d keeps all letters active") {
        double d = 3.0 * (1.0 / 6.0) * 0.9;  // below (m-1) P(m)
        WaterLevel w = dms_water_level(kQuadPmf, d);
        CHECK(w.m_eta == 4);
        CHECK(w.eta == doctest::Approx(d / 3.0).epsilon(1e-12));
    }
    SUBCASE("marginals are consistent") {
        WaterLevel w = dms_water_level(kQuadPmf, 0.2);
        double sum = 0.0;
        for (double v : w.p_ystar) sum += v;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        // P(X = a) = sum_b P(a|b) P_Y*(b).
        for (size_t a = 0; a < 4; ++a) {
            double px = 0.0;
            for (int b = 0; b < w.m_eta; ++b)
                px += w.p_x_given_ystar[a][size_t(b)] * w.p_ystar[size_t(b)];
            CHECK(px == doctest::Approx(kQuadPmf[a]).epsilon(1e-12));
        }
    }
}

TEST_CASE("tilted information distribution") {
    SUBCASE("equiprobable binary collapses to one atom") {
        TiltedInfoDist t = SourceModel{Bms{0.5}}.tilted_info_dist(0.11);
        REQUIRE(t.atoms.size() == 1);
        CHECK(t.atoms[0].value_nats ==
              doctest::Approx(kLn2 - binary_entropy(0.11)).epsilon(1e-14));
    }
    SUBCASE("biased binary per-letter atoms") {
        TiltedInfoDist t = SourceModel{Bms{0.4}}.tilted_info_dist(0.11);
        REQUIRE(t.atoms.size() == 2);
        double hd = binary_entropy(0.11);
        CHECK(t.atoms[0].value_nats == doctest::Approx(-std::log(0.6) - hd).epsilon(1e-14));
        CHECK(t.atoms[0].prob == doctest::Approx(0.6));
        CHECK(t.atoms[1].value_nats == doctest::Approx(-std::log(0.4) - hd).epsilon(1e-14));
        CHECK(t.atoms[1].prob == doctest::Approx(0.4));
    }
    SUBCASE("mean recovers the rate") {
        for (double d : {0.05, 0.11, 0.2}) {
            SourceModel bms{Bms{0.4}};
            CHECK(bms.tilted_info_dist(d).mean() ==
                  doctest::Approx(bms.rate_distortion(d)).epsilon(1e-9));
        }
        SourceModel dms{Dms{kQuadPmf}};
        for (double d : {0.1, 0.25, 0.4, 0.6}) {
            CHECK(dms.tilted_info_dist(d).mean() ==
                  doctest::Approx(dms.rate_distortion(d)).epsilon(1e-9));
        }
        SourceModel bes{Bes{0.1}};
        for (double d : {0.08, 0.1, 0.3}) {
            CHECK(bes.tilted_info_dist(d).mean() ==
                  doctest::Approx(bes.rate_distortion(d)).epsilon(1e-9));
        }
    }
    SUBCASE("probabilities sum to one") {
        TiltedInfoDist t = SourceModel{Bes{0.1}}.tilted_info_dist(0.1);
        double s = 0.0;
        for (auto& a : t.atoms) s += a.prob;
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(SourceModel{Gms{1.0}}.tilted_info_dist(0.25), Error);
}

TEST_CASE("dispersion closed forms") {
    // Gaussian: constant 1/2 nats^2 across the whole range.
    for (double d : {0.01, 0.25, 0.5, 0.99}) {
        CHECK(SourceModel{Gms{1.0}}.dispersion(d) == 0.5);
    }
    CHECK(0.5 / (kLn2 * kLn2) == doctest::Approx(1.0407).epsilon(1e-4));

    // Biased binary: varentropy, independent of d.
    double expect = 0.24 * std::log(1.5) * std::log(1.5);
    CHECK(SourceModel{Bms{0.4}}.dispersion(0.11) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(expect == doctest::Approx(0.039456).epsilon(1e-4));
    CHECK(SourceModel{Bms{0.5}}.dispersion(0.11) == 0.0);

    // Erased source: closed form equals the atom variance.
    SourceModel bes{Bes{0.1}};
    for (double d : {0.07, 0.1, 0.2, 0.35}) {
        CHECK(bes.dispersion(d) ==
              doctest::Approx(bes.tilted_info_dist(d).variance()).epsilon(1e-12));
    }
}

TEST_CASE("lambda_star matches a finite difference of the rate") {
    auto check_lambda = [](const SourceModel& src, double d) {
        double h = 1e-6 * d;
        double fd = -(src.rate_distortion(d + h) - src.rate_distortion(d - h)) / (2.0 * h);
        CHECK(src.lambda_star(d) == doctest::Approx(fd).epsilon(1e-5));
    };
    for (double d : {0.05, 0.11, 0.2, 0.3})
        check_lambda(SourceModel{Bms{0.4}}, d);
    for (double d : {0.1, 0.25, 0.4, 0.55})
        check_lambda(SourceModel{Dms{kQuadPmf}}, d);
    for (double d : {0.07, 0.1, 0.25, 0.4})
        check_lambda(SourceModel{Bes{0.1}}, d);
    for (double d : {0.1, 0.25, 0.7})
        check_lambda(SourceModel{Gms{1.0}}, d);
}

TEST_CASE("rate-distortion convexity on a grid") {
    auto convex = [](const SourceModel& src, double lo, double hi) {
        const int N = 40;
        double prev2 = 0, prev = 0;
        for (int i = 0; i <= N; ++i) {
            double d = lo + (hi - lo) * double(i) / N;
            double r = src.rate_distortion(d);
            if (i >= 2) CHECK(prev <= 0.5 * (prev2 + r) + 1e-10);
            prev2 = prev;
            prev = r;
        }
    };
    convex(SourceModel{Bms{0.4}}, 0.01, 0.39);
    convex(SourceModel{Dms{kQuadPmf}}, 0.01, 0.65);
    convex(SourceModel{Bes{0.1}}, 0.06, 0.49);
    convex(SourceModel{Gms{1.0}}, 0.05, 0.95);
}

TEST_CASE("two-letter DMS reproduces the binary source") {
    double p = 0.34;
    SourceModel dms{Dms{{1.0 - p, p}}};
    SourceModel bms{Bms{p}};
    for (double d : {0.05, 0.15, 0.3}) {
        CHECK(dms.rate_distortion(d) == doctest::Approx(bms.rate_distortion(d)).epsilon(1e-12));
        CHECK(dms.dispersion(d) == doctest::Approx(bms.dispersion(d)).epsilon(1e-12));
        auto ta = dms.tilted_info_dist(d);
        auto tb = bms.tilted_info_dist(d);
        REQUIRE(ta.atoms.size() == tb.atoms.size());
        for (size_t i = 0; i < ta.atoms.size(); ++i) {
            CHECK(ta.atoms[i].value_nats ==
                  doctest::Approx(tb.atoms[i].value_nats).epsilon(1e-12));
            CHECK(ta.atoms[i].prob == doctest::Approx(tb.atoms[i].prob).epsilon(1e-12));
        }
    }
}

TEST_CASE("DMS dispersion below the all-letters-active breakpoint") {
    // For d < (m-1) P_X(m) the cap is never the minimum: V = Var[info].
    SourceModel dms{Dms{kQuadPmf}};
    double m1 = 0.0, m2 = 0.0;
    for (double p : kQuadPmf) {
        m1 += p * (-std::log(p));
        m2 += p * std::log(p) * std::log(p);
    }
    double varinfo = m2 - m1 * m1;
    for (double d : {0.1, 0.3, 0.49}) {
        REQUIRE(d < 3.0 / 6.0);
        CHECK(dms.dispersion(d) == doctest::Approx(varinfo).epsilon(1e-12));
    }
}

TEST_CASE("erasure-free BES degenerates to the equiprobable binary source") {
    SourceModel bes{Bes{0.0}};
    for (double d : {0.05, 0.2, 0.4}) {
        CHECK(bes.rate_distortion(d) ==
              doctest::Approx(kLn2 - binary_entropy(d)).epsilon(1e-12));
        CHECK(bes.dispersion(d) == doctest::Approx(0.0).epsilon(1e-15));
    }
}

TEST_CASE("distortion-rate inversion") {
    SourceModel gms{Gms{1.0}};
    CHECK(gms.distortion_rate(kLn2) == doctest::Approx(0.25).epsilon(1e-12));

    SourceModel bms{Bms{0.4}};
    double r = bms.rate_distortion(0.11);
    CHECK(bms.distortion_rate(r) == doctest::Approx(0.11).epsilon(1e-9));

    // Gaussian identity: distortion-dispersion over squared distortion-rate.
    for (double R : {0.2, 0.5, 1.0, 2.0, 3.0}) {
        double D = gms.distortion_rate(R);
        CHECK(gms.distortion_dispersion(R) / (D * D) == doctest::Approx(2.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS(bms.distortion_rate(10.0), Error);
}

TEST_CASE("required blocklength") {
    SourceModel gms{Gms{1.0}};
    PlanResult r = required_blocklength(gms, PlanMode::Distortion, kLn2, 0.1, 1e-2);
    double expect = 2.0 * std::pow(q_inv(1e-2) / 0.1, 2.0);
    CHECK(r.n_estimate == doctest::Approx(expect).epsilon(1e-9));
    CHECK(r.n_estimate == doctest::Approx(1082.3).epsilon(2e-4));
    CHECK_FALSE(r.zero_dispersion);

    PlanResult z = required_blocklength(SourceModel{Bms{0.5}}, PlanMode::Rate, 0.11, 0.1, 1e-2);
    CHECK(z.zero_dispersion);
    CHECK(z.n_estimate == 0.0);

    // Approaching the erased-source floor the requirement diverges.
    SourceModel bes{Bes{0.1}};
    double prev = 0.0;
    for (double d : {0.12, 0.08, 0.06, 0.055}) {
        PlanResult p = required_blocklength(bes, PlanMode::Rate, d, 0.1, 1e-2);
        CHECK(p.n_estimate > prev);
        prev = p.n_estimate;
    }
}
