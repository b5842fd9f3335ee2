#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "zlab/gaussian.hpp"

using namespace zlab;

TEST_CASE("norm basics") {
    CHECK(norm(GaussianInt{1, 1}) == 2);
    CHECK(norm(GaussianInt{3, 2}) == 13);
    CHECK(norm(GaussianInt{0, 0}) == 0);
}

TEST_CASE("norm is multiplicative") {
    for (long long ar = -6; ar <= 6; ++ar)
        for (long long ai = -6; ai <= 6; ++ai)
            for (long long br = -6; br <= 6; ++br)
                for (long long bi = -6; bi <= 6; ++bi) {
                    GaussianInt a{ar, ai}, b{br, bi};
                    CHECK(norm(a * b) == norm(a) * norm(b));
                }
}

TEST_CASE("divrem: Euclidean property and canonical rounding") {
    // the quotient must be one of the nearest lattice points to a/b
    for (long long ar = -12; ar <= 12; ++ar)
        for (long long ai = -12; ai <= 12; ++ai)
            for (long long br = -5; br <= 5; ++br)
                for (long long bi = -5; bi <= 5; ++bi) {
                    GaussianInt a{ar, ai}, b{br, bi};
                    if (b.is_zero()) continue;
                    auto [q, r] = divrem(a, b);
                    CHECK(a == q * b + r);
                    CHECK(2 * norm(r) <= norm(b));
                    // exhaustive check over the 4 lattice points around a/b:
                    // no candidate gives a strictly smaller remainder
                    long long best = norm(r);
                    for (long long dr = -1; dr <= 1; ++dr)
                        for (long long di = -1; di <= 1; ++di) {
                            GaussianInt qq{q.re + dr, q.im + di};
                            best = std::min(best, norm(a - qq * b));
                        }
                    CHECK(norm(r) == best);
                }
    SUBCASE("trivial cases") {
        auto [q1, r1] = divrem(GaussianInt{7, -3}, GaussianInt{1, 0});
        CHECK(q1 == GaussianInt{7, -3});
        CHECK(r1.is_zero());
        auto [q2, r2] = divrem(GaussianInt{0, 0}, GaussianInt{2, 5});
        CHECK(q2.is_zero());
        CHECK(r2.is_zero());
        auto [q3, r3] = divrem(GaussianInt{5, 0}, GaussianInt{1, 1});
        CHECK(norm(r3) <= 1);
    }
    SUBCASE("division by zero throws") {
        CHECK_THROWS_AS(divrem(GaussianInt{1, 0}, GaussianInt{0, 0}), std::domain_error);
    }
}

TEST_CASE("divrem remainder is a function of the residue class") {
    GaussianInt f{3, 2};
    for (long long ar = -10; ar <= 10; ++ar)
        for (long long ai = -10; ai <= 10; ++ai)
            for (long long k = -2; k <= 2; ++k) {
                GaussianInt a{ar, ai};
                CHECK(mod(a, f) == mod(a + GaussianInt{k, 0} * f, f));
            }
}

TEST_CASE("is_primary oracle cases") {
    CHECK(is_primary_oracle(GaussianInt{1, 0}));
    CHECK_FALSE(is_primary_oracle(GaussianInt{1, 2}));
    CHECK(is_primary_oracle(GaussianInt{-1, -2}));
    CHECK(is_primary_oracle(GaussianInt{9, 0}));
    CHECK_FALSE(is_primary_oracle(GaussianInt{3, 0}));
}

TEST_CASE("is_primary fast path matches divisibility definition up to norm 1e6") {
    const long long B = 1000;
    for (long long a = -B; a <= B; ++a)
        for (long long b = -B; b <= B; ++b) {
            GaussianInt z{a, b};
            if (is_primary(z) != is_primary_oracle(z)) {
                CAPTURE(a);
                CAPTURE(b);
                REQUIRE(is_primary(z) == is_primary_oracle(z));
            }
        }
}

TEST_CASE("primary_associate") {
    CHECK(primary_associate(GaussianInt{1, 0}) == GaussianInt{1, 0});
    CHECK(primary_associate(GaussianInt{3, 0}) == GaussianInt{-3, 0});
    CHECK(primary_associate(GaussianInt{1, 2}) == GaussianInt{-1, -2});
    CHECK_THROWS_AS(primary_associate(GaussianInt{1, 1}), std::domain_error);
    CHECK_THROWS_AS(primary_associate(GaussianInt{0, 0}), std::domain_error);

    SUBCASE("exactly one associate of any odd z is primary") {
        for (long long a = -100; a <= 100; ++a)
            for (long long b = -100; b <= 100; ++b) {
                GaussianInt z{a, b};
                if (z.is_zero() || z.is_even()) continue;
                int count = 0;
                for (int k = 0; k < 4; ++k)
                    if (is_primary(unit_pow_i(k) * z)) ++count;
                CHECK(count == 1);
                auto [p, s] = primary_decompose(z);
                CHECK(is_primary(p));
                CHECK(unit_pow_i(s) * p == z);
            }
    }
}

TEST_CASE("factor: fixed cases") {
    auto f2 = factor(GaussianInt{2, 0});
    CHECK(f2.unit == GaussianInt{0, -1});
    CHECK(f2.exp2 == 2);
    CHECK(f2.factors.empty());

    auto f5 = factor(GaussianInt{5, 0});
    CHECK(f5.exp2 == 0);
    REQUIRE(f5.factors.size() == 2);
    CHECK(f5.reconstruct() == GaussianInt{5, 0});
    for (auto& [p, e] : f5.factors) {
        CHECK(is_primary(p));
        CHECK(norm(p) == 5);
        CHECK(e == 1);
    }

    auto fm3 = factor(GaussianInt{-3, 0});
    CHECK(fm3.unit == GaussianInt{1, 0});
    CHECK(fm3.exp2 == 0);
    REQUIRE(fm3.factors.size() == 1);
    CHECK(fm3.factors[0] == std::pair<GaussianInt, int>{GaussianInt{-3, 0}, 1});
}

TEST_CASE("factor round-trip up to norm 1e5") {
    for (long long a = -316; a <= 316; ++a)
        for (long long b = 0; b <= 316; ++b) {  // conjugation halves the work
            GaussianInt z{a, b};
            if (z.is_zero() || norm(z) > 100000) continue;
            auto f = factor(z);
            if (f.reconstruct() != z) {
                CAPTURE(a);
                CAPTURE(b);
                REQUIRE(f.reconstruct() == z);
            }
            for (auto& [p, e] : f.factors) {
                CHECK(is_primary(p));
                CHECK(e >= 1);
            }
        }
}

TEST_CASE("squarefree_decompose") {
    auto [a1, a2] = squarefree_decompose(GaussianInt{1, 0});
    CHECK(a1 == GaussianInt{1, 0});
    CHECK(a2 == GaussianInt{1, 0});

    auto [b1, b2] = squarefree_decompose(GaussianInt{9, 0});
    CHECK(b1 == GaussianInt{1, 0});
    CHECK(b2 == GaussianInt{-3, 0});

    auto [c1, c2] = squarefree_decompose(GaussianInt{-1, -2});
    CHECK(c1 == GaussianInt{-1, -2});
    CHECK(c2 == GaussianInt{1, 0});

    CHECK_THROWS_AS(squarefree_decompose(GaussianInt{3, 0}), std::domain_error);

    SUBCASE("round-trip and square-freeness for all primary norms <= 5000") {
        for (GaussianInt c : enumerate_primary(5000)) {
            auto [d1, d2] = squarefree_decompose(c);
            CHECK(d1 * d2 * d2 == c);
            CHECK(is_primary(d1));
            CHECK(is_primary(d2));
            CHECK(is_squarefree(d1));
        }
    }
}

TEST_CASE("Euclidean property on random large operands") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> d(-1000, 1000);
    for (int trial = 0; trial < 20000; ++trial) {
        GaussianInt a{d(rng), d(rng)}, b{d(rng), d(rng)};
        if (b.is_zero()) continue;
        auto [q, r] = divrem(a, b);
        CHECK(a == q * b + r);
        CHECK(2 * norm(r) <= norm(b));
    }
}

TEST_CASE("gcd") {
    GaussianInt p{-1, -2}, q{3, 2};
    CHECK(gcd(p * q, q).is_unit() == false);
    CHECK(gcd(p * q, q) == primary_associate(q));
    CHECK(coprime(p, q));
    CHECK(gcd(GaussianInt{0, 0}, GaussianInt{0, 0}).is_zero());
}

TEST_CASE("enumerate_primary") {
    auto one = enumerate_primary(1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == GaussianInt{1, 0});

    SUBCASE("X=10 matches brute-force filter") {
        auto list = enumerate_primary(10);
        std::set<std::pair<long long, long long>> got;
        for (auto z : list) got.insert({z.re, z.im});
        std::set<std::pair<long long, long long>> want;
        for (long long a = -4; a <= 4; ++a)
            for (long long b = -4; b <= 4; ++b)
                if (is_primary_oracle(GaussianInt{a, b}) && norm(GaussianInt{a, b}) <= 10)
                    want.insert({a, b});
        CHECK(got == want);
        CHECK(got.count({-1, -2}) == 1);
        CHECK(got.count({-1, 2}) == 1);
    }

    SUBCASE("ordering is (norm, re, im) and values unique") {
        auto list = enumerate_primary(2000);
        for (size_t i = 1; i < list.size(); ++i) CHECK(norm_order_less(list[i - 1], list[i]));
    }

    SUBCASE("count at X=1e4 equals independent double loop, and is near pi X/8") {
        const long long X = 10000;
        auto list = enumerate_primary(X);
        size_t count = 0;
        for (long long a = -100; a <= 100; ++a)
            for (long long b = -100; b <= 100; ++b)
                if (norm(GaussianInt{a, b}) <= X && is_primary_oracle(GaussianInt{a, b})) ++count;
        CHECK(list.size() == count);
        double expect = 3.14159265358979 * X / 8;
        CHECK(std::abs(static_cast<double>(count) - expect) / expect < 0.05);
    }
}

TEST_CASE("parse/format round trip") {
    for (auto s : {"0", "1", "-3", "i", "-i", "2i", "-12i", "3+2i", "-1-2i", "10-7i", "1+i", "-4-4i"}) {
        GaussianInt z = parse_gaussian(s);
        CHECK(to_string(z) == s);
    }
    CHECK(parse_gaussian("0+1i") == GaussianInt{0, 1});
    CHECK_THROWS_AS(parse_gaussian("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_gaussian(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_gaussian("1+2j"), std::invalid_argument);
}

TEST_CASE("is_gaussian_prime") {
    CHECK(is_gaussian_prime(GaussianInt{1, 1}));
    CHECK(is_gaussian_prime(GaussianInt{-1, -2}));
    CHECK(is_gaussian_prime(GaussianInt{3, 0}));
    CHECK(is_gaussian_prime(GaussianInt{-3, 0}));
    CHECK_FALSE(is_gaussian_prime(GaussianInt{5, 0}));
    CHECK_FALSE(is_gaussian_prime(GaussianInt{1, 0}));
    CHECK_FALSE(is_gaussian_prime(GaussianInt{9, 0}));
}
