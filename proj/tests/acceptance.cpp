// Acceptance suite: one test case per criterion, each printing a single
// PASS/FAIL line with the measured quantities.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "core/bounds_binary.hpp"
#include "core/combinatorics.hpp"
#include "core/gaussian.hpp"
#include "core/oracle.hpp"
#include "core/solver.hpp"
#include "core/source_model.hpp"

using namespace rdb;

namespace {
constexpr double kLn2 = 0.6931471805599453;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int id, const std::string& title, bool ok, const std::string& detail) {
    std::printf("ACCEPTANCE %d %-34s %s  %s\n", id, title.c_str(), ok ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

SourceModel make_source(const std::string& kind, double param) {
    if (kind == "bms") return SourceModel{Bms{param}};
    if (kind == "bes") return SourceModel{Bes{param}};
    if (kind == "gms") return SourceModel{Gms{param}};
    throw std::runtime_error("unknown source kind in fixture: " + kind);
}

ThetaMode theta_from(const std::string& s) {
    if (s == "half-log-n") return ThetaMode::HalfLogN;
    if (s == "lossless") return ThetaMode::Lossless;
    if (s == "envelope") return ThetaMode::Envelope;
    return ThetaMode::Zero;
}

}  // namespace

TEST_CASE("criterion 1: erased-source tightness at blocklength 1000") {
    Timer timer;
    SourceModel src{Bes{0.1}};
    EvalOptions opts;
    const int64_t n = 1000;
    const double d = 0.1, eps = 0.1;
    double rd_bits = src.rate_distortion(d) / kLn2;
    double ach = eval_rate_bound(src, "bes-ach", n, d, eps, opts).rate_bits;
    double conv = eval_rate_bound(src, "bes-conv", n, d, eps, opts).rate_bits;
    double penalty = ach / rd_bits - 1.0;
    double gap = ach - conv;
    double secs = timer.seconds();

    bool ok_penalty = penalty >= 0.07 && penalty <= 0.11;
    bool ok_gap = gap <= 0.02;
    bool ok_time = secs < 30.0;
    report(1, "BES penalty window",
           ok_penalty && ok_gap && ok_time,
           "penalty=" + fmt(penalty) + " (target [0.07,0.11]), gap=" + fmt(gap) +
               " bits (<=0.02), t=" + fmt(secs) + "s");
    CHECK(ok_penalty);
    CHECK(ok_gap);
    CHECK(ok_time);
}

TEST_CASE("criterion 2: equiprobable-binary achievability remainder") {
    Timer timer;
    const double d = 0.11, eps = 1e-2;
    double rd = kLn2 - binary_entropy(d);
    std::vector<double> qs;
    std::string vals;
    for (int64_t n : {256, 512, 1024, 2048, 4096}) {
        double log_m = binary::ebms_ach_log_m(n, d, eps);
        double q = log_m - double(n) * rd - 0.5 * std::log(double(n));
        qs.push_back(q);
        vals += (vals.empty() ? "" : ",") + fmt(q);
    }
    double mx = 0.0, spread_lo = 1e300, spread_hi = -1e300;
    for (double q : qs) {
        mx = std::max(mx, std::fabs(q));
        spread_lo = std::min(spread_lo, q);
        spread_hi = std::max(spread_hi, q);
    }
    double spread = spread_hi - spread_lo;
    double secs = timer.seconds();
    bool ok_mag = mx <= 3.0;
    bool ok_spread = spread <= 1.0;
    bool ok_time = secs < 10.0;
    report(2, "EBMS log-n remainder",
           ok_mag && ok_spread && ok_time,
           "q={" + vals + "}, max|q|=" + fmt(mx) + " (<=3), spread=" + fmt(spread) +
               " (<=1), t=" + fmt(secs) + "s");
    CHECK(ok_mag);
    CHECK(ok_spread);
    CHECK(ok_time);
}

TEST_CASE("criterion 3: gaussian dispersion constants") {
    SourceModel src{Gms{1.0}};
    bool ok = true;
    for (double R : {0.2, 0.5, 1.0, 2.0, 3.5}) {
        double D = src.distortion_rate(R);
        double ratio = src.distortion_dispersion(R) / (D * D);
        if (std::fabs(ratio - 2.0) > 1e-9) ok = false;
    }
    bool ok_v = true;
    for (double d = 0.01; d < 1.0; d += 0.007) {
        if (src.dispersion(d) != 0.5) ok_v = false;
    }
    report(3, "GMS dispersion constants", ok && ok_v,
           std::string("curlyV/D^2=2 at 5 rates to 1e-9: ") + (ok ? "yes" : "no") +
               ", V(d)=1/2 exactly on the d-grid: " + (ok_v ? "yes" : "no"));
    CHECK(ok);
    CHECK(ok_v);
}

TEST_CASE("criterion 4: reduction identities") {
    Timer timer;
    EvalOptions tight;
    tight.log_m_tol = 1e-11;
    int points = 0;
    double worst = 0.0;
    auto record = [&](double a, double b) {
        ++points;
        worst = std::max(worst, std::fabs(a - b));
    };

    // Two-letter DMS vs the binary source.
    {
        const double p = 0.4, d = 0.11;
        SourceModel dms{Dms{{1.0 - p, p}}};
        SourceModel bms{Bms{p}};
        for (int64_t n : {45, 64, 83}) {
            for (double eps : {0.01, 0.1}) {
                record(eval_rate_bound(dms, "dms-tilted-conv", n, d, eps, tight).log_M_nats,
                       eval_rate_bound(bms, "bms-tilted-conv", n, d, eps, tight).log_M_nats);
                record(eval_rate_bound(dms, "dms-ht-conv", n, d, eps, tight).log_M_nats,
                       eval_rate_bound(bms, "bms-ht-conv", n, d, eps, tight).log_M_nats);
            }
        }
        // Fixed-composition identity where the bound inverts and the two
        // rounding conventions agree on the composition.
        for (int64_t n : {150, 163}) {
            record(eval_rate_bound(dms, "dms-cc-ach", n, d, 0.1, tight).log_M_nats,
                   eval_rate_bound(bms, "bms-cc-ach", n, d, 0.1, tight).log_M_nats);
        }
    }
    // Erasure-free BES vs the equiprobable binary source.
    {
        SourceModel bes{Bes{0.0}};
        SourceModel ebms{Bms{0.5}};
        for (int64_t n : {16, 50, 160, 512}) {
            for (double d : {0.05, 0.2}) {
                for (double eps : {0.01, 0.1}) {
                    record(eval_rate_bound(bes, "bes-ach", n, d, eps, tight).log_M_nats,
                           eval_rate_bound(ebms, "ebms-ach", n, d, eps, tight).log_M_nats);
                    record(eval_rate_bound(bes, "bes-conv", n, d, eps, tight).log_M_nats,
                           eval_rate_bound(ebms, "ebms-conv", n, d, eps, tight).log_M_nats);
                }
            }
        }
    }
    // Weight-class converse at p = 1/2 vs the sphere-covering inversion.
    {
        for (int64_t n : {10, 37, 100, 403, 1000}) {
            for (double d : {0.0, 0.11, 0.3}) {
                record(binary::bms_converse_ht_log_m(0.5, n, d, 0.01),
                       binary::ebms_converse_log_m(n, d, 0.01));
            }
        }
    }
    double secs = timer.seconds();
    bool ok = worst <= 1e-10 && points >= 50;
    bool ok_time = secs < 60.0;
    report(4, "reduction identities", ok && ok_time,
           "points=" + std::to_string(points) + ", worst |dlogM|=" + fmt(worst) +
               " (<=1e-10), t=" + fmt(secs) + "s");
    CHECK(ok);
    CHECK(ok_time);
}

TEST_CASE("criterion 5: exhaustive-optimum bracketing") {
    Timer timer;
    EvalOptions opts;
    opts.integer_m = true;
    int cases = 0, holds = 0;
    std::string bad;
    for (double p : {0.3, 0.5}) {
        SourceModel src{Bms{p}};
        for (double d : {0.0, 0.25}) {
            for (double eps : {0.05, 0.2}) {
                for (int64_t n = 1; n <= 4; ++n) {
                    ++cases;
                    int64_t mstar = oracle::brute_force_mstar(src, n, d, eps);
                    double conv, ach;
                    if (p == 0.5) {
                        conv = eval_rate_bound(src, "ebms-conv", n, d, eps, opts).log_M_nats;
                        ach = eval_rate_bound(src, "ebms-ach", n, d, eps, opts).log_M_nats;
                    } else {
                        conv = std::max(
                            eval_rate_bound(src, "bms-ht-conv", n, d, eps, opts).log_M_nats,
                            eval_rate_bound(src, "bms-tilted-conv", n, d, eps, opts).log_M_nats);
                        ach = eval_rate_bound(src, "bms-rc-ach", n, d, eps, opts).log_M_nats;
                    }
                    double lm = std::log(double(mstar));
                    if (conv <= lm + 1e-9 && lm <= ach + 1e-9) {
                        ++holds;
                    } else if (bad.size() < 120) {
                        bad += " [p=" + fmt(p) + ",d=" + fmt(d) + ",eps=" + fmt(eps) +
                               ",n=" + std::to_string(n) + ": " + fmt(conv) + "<=" + fmt(lm) +
                               "<=" + fmt(ach) + "]";
                    }
                }
            }
        }
    }
    double secs = timer.seconds();
    bool ok = holds == cases;
    bool ok_time = secs < 300.0;
    report(5, "oracle bracketing", ok && ok_time,
           std::to_string(holds) + "/" + std::to_string(cases) + " brackets hold, t=" +
               fmt(secs) + "s" + bad);
    CHECK(ok);
    CHECK(ok_time);
}

TEST_CASE("criterion 6: random-coding exactness") {
    Timer timer;
    struct Case {
        int m;
        int64_t n, M;
        double d;
    };
    const Case cases[] = {{2, 8, 4, 0.125}, {2, 10, 8, 0.1},  {2, 6, 2, 1.0 / 6.0},
                          {3, 5, 6, 0.2},   {3, 7, 10, 0.15}, {4, 4, 8, 0.25}};
    const int64_t trials = 1000000;
    const uint64_t seed = 20120613;
    int ok_count = 0;
    std::string detail;
    for (const auto& c : cases) {
        SourceModel src = c.m == 2 ? SourceModel{Bms{0.5}}
                                   : SourceModel{Dms{std::vector<double>(
                                         size_t(c.m), 1.0 / double(c.m))}};
        auto mc = oracle::mc_random_coding(src, oracle::CodebookLaw::Equiprobable, c.n, c.M, c.d,
                                           trials, seed);
        double closed =
            c.m == 2 ? binary::ebms_ach_eps(c.n, c.d, std::log(double(c.M)))
                     : eval_eps_bound(src, "edms-ach", c.n, c.d, std::log(double(c.M)));
        double z = std::fabs(mc.eps_hat - closed) / std::max(mc.std_err, 1e-12);
        if (z <= 3.0) ++ok_count;
        detail += (detail.empty() ? "z={" : ",") + fmt(z);
    }
    detail += "}";
    double secs = timer.seconds();
    bool ok = ok_count == 6;
    bool ok_time = secs < 120.0;
    report(6, "random-coding exactness", ok && ok_time,
           std::to_string(ok_count) + "/6 within 3 std errors, " + detail + ", t=" + fmt(secs) +
               "s");
    CHECK(ok);
    CHECK(ok_time);
}

TEST_CASE("criterion 7: approximation placement on the frozen grid") {
    std::ifstream in(std::string(RDB_TEST_DATA_DIR) + "/standard_grid.csv");
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);  // header
    int rows = 0, ok_rows = 0;
    std::string bad;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split(line, ',');
        REQUIRE(f.size() == 9);
        SourceModel src = make_source(f[1], std::stod(f[2]));
        double d = std::stod(f[3]), eps = std::stod(f[4]);
        int64_t n = std::stoll(f[8]);
        EvalOptions opts;
        opts.theta = theta_from(f[5]);
        double conv = -1e300, ach = 1e300;
        for (const auto& b : split(f[6], ';'))
            conv = std::max(conv, eval_rate_bound(src, b, n, d, eps, opts).rate_bits);
        for (const auto& b : split(f[7], ';'))
            ach = std::min(ach, eval_rate_bound(src, b, n, d, eps, opts).rate_bits);
        double apx = eval_rate_bound(src, "approx", n, d, eps, opts).rate_bits;
        ++rows;
        if (apx >= conv - 0.01 && apx <= ach + 0.01) {
            ++ok_rows;
        } else if (bad.size() < 160) {
            bad += " [" + f[0] + ",n=" + f[8] + ": conv=" + fmt(conv) + " apx=" + fmt(apx) +
                   " ach=" + fmt(ach) + "]";
        }
    }
    bool ok = rows > 0 && ok_rows == rows;
    report(7, "approximation placement", ok,
           std::to_string(ok_rows) + "/" + std::to_string(rows) +
               " grid rows inside [conv-0.01, ach+0.01]" + bad);
    CHECK(ok);
}

TEST_CASE("criterion 8: blocklength planning constant") {
    SourceModel src{Gms{1.0}};
    PlanResult r = required_blocklength(src, PlanMode::Distortion, kLn2, 0.1, 1e-2);
    double expect = 2.0 * std::pow(q_inv(1e-2) / 0.1, 2.0);
    bool ok = std::fabs(r.n_estimate - expect) < 1e-9 && std::fabs(r.n_estimate - 1082.3) <= 0.5;
    report(8, "planning formula", ok,
           "n=" + fmt(r.n_estimate) + " vs 2(Qinv(1e-2)/0.1)^2=" + fmt(expect) +
               ", |n-1082.3|=" + fmt(std::fabs(r.n_estimate - 1082.3)) + " (<=0.5)");
    CHECK(ok);
}

TEST_CASE("criterion 9: figure data reproduction and curve orderings") {
    Timer timer;
#ifdef RDB_CLI_BIN
    const std::string cli = RDB_CLI_BIN;
#else
    const std::string cli;
#endif
    REQUIRE(!cli.empty());
    REQUIRE(std::system("mkdir -p acceptance_figs") == 0);

    auto load = [&](const std::string& name) {
        std::string path = "acceptance_figs/" + name + ".csv";
        std::string cmd = cli + " figure " + name + " --out " + path + " --threads 4";
        REQUIRE(std::system(cmd.c_str()) == 0);
        // map: bound -> (n -> rate)
        std::map<std::string, std::map<int64_t, double>> curves;
        std::ifstream in(path);
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            auto f = split(line, ',');
            if (f.size() != 4 || f[2] == "error") continue;
            curves[f[1]][std::stoll(f[0])] = std::stod(f[3]);
        }
        return curves;
    };

    bool ok = true;
    std::string detail;
    auto expect = [&](bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.size() < 200) detail += " " + what;
        }
    };

    // figs 1-3: the classical bound is the loosest achievability curve.
    for (const std::string name : {"fig1", "fig2", "fig3"}) {
        auto curves = load(name);
        const auto& shannon = curves["bms-shannon-ach"];
        const auto& tight = curves.count("ebms-ach") ? curves["ebms-ach"] : curves["bms-rc-ach"];
        expect(!shannon.empty() && !tight.empty(), name + ": missing curves");
        for (const auto& [n, r] : tight) {
            auto it = shannon.find(n);
            if (it != shannon.end()) expect(it->second >= r - 1e-9, name + ": classical not loosest");
        }
        if (name == "fig1") {
            // row-count shape: every bound at every grid point.
            std::ifstream in("acceptance_figs/fig1.csv");
            std::string line;
            int64_t data_rows = -1;  // minus header
            while (std::getline(in, line)) ++data_rows;
            expect(data_rows == int64_t(4 * curves["ebms-ach"].size()),
                   "fig1: row count != bounds x grid");
        }
    }
    // fig6: converse below achievability everywhere.
    {
        auto curves = load("fig6");
        for (const auto& [n, r] : curves["bes-ach"]) {
            auto it = curves["bes-conv"].find(n);
            if (it != curves["bes-conv"].end())
                expect(it->second <= r + 1e-9, "fig6: converse above achievability");
        }
    }
    // figs 8-9: the volume converse sits above the tilted converse.
    for (const std::string name : {"fig8", "fig9"}) {
        auto curves = load(name);
        expect(!curves["volume-converse"].empty(), name + ": missing volume converse");
        for (const auto& [n, r] : curves["volume-converse"]) {
            auto it = curves["gms-tilted-conv"].find(n);
            if (it != curves["gms-tilted-conv"].end())
                expect(it->second <= r + 1e-9, name + ": tilted above volume");
            auto cap = curves["gms-cap-ach"].find(n);
            if (cap != curves["gms-cap-ach"].end())
                expect(r <= cap->second + 1e-9, name + ": converse above cap achievability");
            auto cov = curves["gms-covering-ach"].find(n);
            if (cov != curves["gms-covering-ach"].end())
                expect(r <= cov->second + 1e-9, name + ": converse above covering");
        }
    }
    double secs = timer.seconds();
    report(9, "figure data reproduction", ok,
           "orderings over figs 1-3,6,8,9 (pixel match not claimed), t=" + fmt(secs) + "s" +
               detail);
    CHECK(ok);
}
