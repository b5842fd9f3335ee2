#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "zlab/experiments.hpp"

using namespace zlab;

TEST_CASE("exponent_fit") {
    std::vector<std::pair<double, double>> pts;
    for (double x : {1.0, 2.0, 4.0, 8.0, 16.0}) pts.emplace_back(x, x * x);
    auto [slope, intercept] = exponent_fit(pts);
    CHECK(std::abs(slope - 2.0) < 1e-12);
    CHECK(std::abs(intercept) < 1e-12);

    pts.clear();
    for (double x : {1.0, 3.0, 9.0, 27.0}) pts.emplace_back(x, 5.0);
    CHECK(std::abs(exponent_fit(pts).first) < 1e-12);

    pts.clear();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> noise(-0.01, 0.01);
    for (double x = 2; x <= 1024; x *= 2)
        pts.emplace_back(x, std::pow(x, 1.5) * (1.0 + noise(rng)));
    const double s15 = exponent_fit(pts).first;
    CHECK(s15 > 1.45);
    CHECK(s15 < 1.55);

    CHECK_THROWS_AS(exponent_fit({{1, 1}, {2, 2}}), std::domain_error);
    CHECK_THROWS_AS(exponent_fit({{1, 1}, {2, 2}, {3, -1}}), std::domain_error);
}

TEST_CASE("moment_scan structure at small X") {
    const auto res = moment_scan(512, 0.0);
    REQUIRE(res.records.size() == 8);  // S2 and S1 for X = 64,128,256,512
    double prev = 0;
    for (size_t i = 0; i < res.records.size(); i += 2) {
        const auto& r2 = res.records[i];
        const auto& r1 = res.records[i + 1];
        CHECK(r2.params[2].second == "S2");
        CHECK(r1.params[2].second == "S1");
        const double s2 = r2.value.real(), s1 = r1.value.real();
        CHECK(s2 >= prev);  // monotone in X
        prev = s2;
        // Cauchy: S1^2 <= terms * S2 (bound field of the S1 record)
        CHECK(s1 <= r1.bound * (1.0 + 1e-12));
    }
    // crude exponent sanity at this tiny scale; the acceptance gate runs 2^14
    CHECK(res.exponent > 0.3);
    CHECK(res.exponent < 1.7);
    CHECK_THROWS_AS(moment_scan(32, 0.0), std::domain_error);
}

TEST_CASE("sieve_test") {
    SUBCASE("brute-force agreement at M=N=64") {
        const uint64_t seed = 11;
        const auto res = sieve_test(64, 64, 1, seed);
        REQUIRE(res.records.size() == 1);

        std::vector<GaussianInt> ms, ns;
        for (const auto& z : PrimaryTable::upto(64)) {
            if (norm(z) > 64) break;
            if (is_squarefree(z)) ms.push_back(z);
        }
        ns = ms;
        std::mt19937_64 rng(seed);
        std::vector<double> a(ns.size());
        for (auto& v : a) v = (rng() & 1) ? 1.0 : -1.0;
        double lhs = 0;
        for (const auto& m : ms) {
            double row = 0;
            for (size_t j = 0; j < ns.size(); ++j)
                row += a[j] * symbol(ns[j], m);
            lhs += row * row;
        }
        CHECK(res.records[0].value.real() == doctest::Approx(lhs).epsilon(1e-12));
        CHECK(res.max_ratio ==
              doctest::Approx(lhs / (128.0 * static_cast<double>(ns.size()))));
    }
    SUBCASE("normalized ratio stays small") {
        const auto res = sieve_test(256, 256, 20, 1);
        CHECK(res.max_ratio <= 50.0);
        CHECK(res.max_ratio > 0.0);
    }
    SUBCASE("ratio cannot grow when N grows with coefficients fixed") {
        // fixed coefficients on the small support; larger N only inflates
        // the (M+N) normalizer
        std::vector<GaussianInt> ms, ns;
        for (const auto& z : PrimaryTable::upto(128)) {
            if (norm(z) > 128) break;
            if (is_squarefree(z)) ms.push_back(z);
        }
        ns = ms;
        std::mt19937_64 rng(3);
        std::vector<double> a(ns.size());
        for (auto& v : a) v = (rng() & 1) ? 1.0 : -1.0;
        double lhs = 0;
        for (const auto& m : ms) {
            double row = 0;
            for (size_t j = 0; j < ns.size(); ++j) row += a[j] * symbol(ns[j], m);
            lhs += row * row;
        }
        const double na = static_cast<double>(ns.size());
        const double r_small = lhs / ((128.0 + 128.0) * na);
        const double r_big = lhs / ((128.0 + 512.0) * na);
        CHECK(r_big <= r_small);
    }
}

TEST_CASE("d_bound_experiment mini grid") {
    const auto res = d_bound_experiment({0.0, 2.0}, {8.0}, {16.0, 32.0, 64.0});
    CHECK(!res.records.empty());
    CHECK(res.fitted_constant <= 100.0);
    CHECK(res.fitted_constant > 0.0);
    CHECK(res.max_conjugation_residual < 1e-10);
    CHECK(res.crossover_ok);
    for (const auto& r : res.records) {
        CHECK(r.bound > 0);
        CHECK(r.ratio == doctest::Approx(std::abs(r.value) / r.bound));
    }
    CHECK_THROWS_AS(d_bound_experiment({4.0}, {0.0}, {16.0}), std::domain_error);
}

TEST_CASE("majorant_compare") {
    SUBCASE("bounded ratio at a small point") {
        const auto res = majorant_compare(0.0, 1.0, 8.0);
        CHECK(res.majorant > 0.0);
        CHECK(res.ratio <= 20.0);
    }
    SUBCASE("majorant monotone in the truncation ranges") {
        const auto full = majorant_compare(0.0, 1.0, 8.0);
        const auto half = majorant_compare(0.0, 1.0, 8.0, UnitTwist::i,
                                           UnitTwist::one, 0.5);
        CHECK(half.majorant <= full.majorant * (1.0 + 1e-12));
    }
    SUBCASE("empty window gives zero ratio") {
        const auto res = majorant_compare(0.0, 1.0, 0.4);
        CHECK(res.d_value == cplx(0.0));
        CHECK(res.ratio == 0.0);
    }
}
