#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/bounds_binary.hpp"
#include "core/errors.hpp"
#include "core/oracle.hpp"
#include "core/source_model.hpp"

using namespace rdb;
using namespace rdb::oracle;

TEST_CASE("exhaustive optimum at blocklength one") {
    SourceModel src{Bms{0.5}};
    // One codeword covers mass 1/2; enough when eps >= 1/2.
    CHECK(brute_force_mstar(src, 1, 0.0, 0.6) == 1);
    CHECK(brute_force_mstar(src, 1, 0.0, 0.4) == 2);
    // Radius 1 covers both strings with any single codeword.
    CHECK(brute_force_mstar(src, 1, 1.0, 0.0) == 1);
    CHECK_THROWS_AS(brute_force_mstar(src, 5, 0.0, 0.1), Error);
}

TEST_CASE("exhaustive optimum is monotone in its arguments") {
    SourceModel src{Bms{0.3}};
    CHECK(brute_force_mstar(src, 3, 0.0, 0.05) >= brute_force_mstar(src, 3, 0.0, 0.2));
    CHECK(brute_force_mstar(src, 3, 0.0, 0.1) >= brute_force_mstar(src, 3, 1.0 / 3.0, 0.1));
}

TEST_CASE("simulation reproduces the closed-form ensemble average") {
    SourceModel src{Bms{0.5}};
    McResult r = mc_random_coding(src, CodebookLaw::Equiprobable, 8, 4, 0.125, 200000, 77);
    double exact = binary::ebms_ach_eps(8, 0.125, std::log(4.0));
    CHECK(std::fabs(r.eps_hat - exact) <= 3.0 * r.std_err);

    // Std error shrinks like 1/sqrt(trials) and the estimates agree.
    McResult r2 = mc_random_coding(src, CodebookLaw::Equiprobable, 8, 4, 0.125, 1800000, 77);
    CHECK(r.std_err / r2.std_err == doctest::Approx(3.0).epsilon(0.05));
    CHECK(std::fabs(r.eps_hat - r2.eps_hat) <= 3.0 * (r.std_err + r2.std_err));
}

TEST_CASE("simulation is deterministic for a fixed seed") {
    SourceModel src{Bms{0.5}};
    McResult a = mc_random_coding(src, CodebookLaw::Equiprobable, 6, 3, 0.1, 50000, 123);
    McResult b = mc_random_coding(src, CodebookLaw::Equiprobable, 6, 3, 0.1, 50000, 123);
    CHECK(a.eps_hat == b.eps_hat);
    McResult c = mc_random_coding(src, CodebookLaw::Equiprobable, 6, 3, 0.1, 50000, 124);
    CHECK(a.eps_hat != c.eps_hat);  // almost surely
    CHECK_THROWS_AS(mc_random_coding(src, CodebookLaw::Equiprobable, 6, 3, 0.1, 100, 1), Error);
}

TEST_CASE("full-codebook simulation never misses") {
    SourceModel src{Bms{0.5}};
    McResult r = mc_random_coding(src, CodebookLaw::Equiprobable, 3, 60, 0.0, 10000, 9);
    // 60 random codewords over 8 strings: a miss needs all draws to avoid one
    // string; astronomically unlikely but not impossible, so allow tiny slack.
    CHECK(r.eps_hat <= 1e-3);
}

TEST_CASE("lossless optimum: equiprobable closed form") {
    SourceModel src{Bms{0.5}};
    for (int64_t n : {4, 9, 14}) {
        for (double eps : {0.1, 0.37, 0.8}) {
            auto r = lossless_mstar(src, n, eps);
            CHECK(r.m_star == std::ceil((1.0 - eps) * std::pow(2.0, double(n)) - 1e-9));
        }
    }
}

TEST_CASE("lossless optimum: grouped scan equals naive enumeration") {
    const double p = 0.4;
    const int64_t n = 12;
    SourceModel src{Bms{p}};
    // Naive: sort all 2^12 strings by probability, accumulate.
    std::vector<double> probs;
    for (int x = 0; x < (1 << n); ++x) {
        int w = __builtin_popcount(unsigned(x));
        probs.push_back(std::pow(p, w) * std::pow(1.0 - p, double(n - w)));
    }
    std::sort(probs.rbegin(), probs.rend());
    for (double eps : {0.05, 0.1, 0.5}) {
        double cum = 0.0;
        int64_t mstar = 0;
        for (double q : probs) {
            cum += q;
            ++mstar;
            if (cum >= 1.0 - eps - 1e-15) break;
        }
        auto r = lossless_mstar(src, n, eps);
        CHECK(r.m_star == double(mstar));
        // Optimal-test measure sandwich.
        double beta = std::exp(r.log_beta);
        CHECK(beta <= r.m_star + 1e-9);
        CHECK(r.m_star <= beta + 1.0 + 1e-9);
    }
}

TEST_CASE("lossless optimum nonincreasing in eps") {
    SourceModel src{Bms{0.35}};
    double prev = 1e300;
    for (double eps : {0.02, 0.1, 0.3, 0.7}) {
        auto r = lossless_mstar(src, 10, eps);
        CHECK(r.m_star <= prev);
        prev = r.m_star;
    }
}

TEST_CASE("lossless optimum for a small DMS by direct enumeration") {
    std::vector<double> pmf = {0.5, 0.3, 0.2};
    SourceModel src{Dms{pmf}};
    const int64_t n = 6;
    std::vector<double> probs;
    for (int x = 0; x < 729; ++x) {
        int v = x;
        double q = 1.0;
        for (int i = 0; i < n; ++i) {
            q *= pmf[size_t(v % 3)];
            v /= 3;
        }
        probs.push_back(q);
    }
    std::sort(probs.rbegin(), probs.rend());
    for (double eps : {0.1, 0.4}) {
        double cum = 0.0;
        int64_t mstar = 0;
        for (double q : probs) {
            cum += q;
            ++mstar;
            if (cum >= 1.0 - eps - 1e-12) break;
        }
        CHECK(lossless_mstar(src, n, eps).m_star == double(mstar));
    }
    CHECK_THROWS_AS(lossless_mstar(src, 60, 0.1), Error);  // beyond exact-count range
}
