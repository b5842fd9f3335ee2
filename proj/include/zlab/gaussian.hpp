#pragma once

#include <cstdint>
#include <compare>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zlab {

// Element of Z[i]. Components are 64-bit; all products go through 128-bit
// intermediates and are checked on narrowing. Fine for everything this
// project does (norms up to the trial-division ceiling of ~4e12).
struct GaussianInt {
    long long re = 0;
    long long im = 0;

    constexpr GaussianInt() = default;
    constexpr GaussianInt(long long r, long long i = 0) : re(r), im(i) {}

    friend constexpr bool operator==(const GaussianInt&, const GaussianInt&) = default;

    constexpr GaussianInt operator-() const { return {-re, -im}; }
    constexpr GaussianInt conj() const { return {re, -im}; }

    friend constexpr GaussianInt operator+(GaussianInt a, GaussianInt b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend constexpr GaussianInt operator-(GaussianInt a, GaussianInt b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianInt operator*(GaussianInt a, GaussianInt b);

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_unit() const;
    // norm odd
    bool is_odd() const { return ((re + im) & 1) != 0; }
    bool is_even() const { return !is_odd(); }
};

// Trial-division factoring is used throughout; keep norms below this.
inline constexpr long long kNormCeiling = 4'000'000'000'000LL;

long long norm(GaussianInt z);

// The four units as powers of i: i^k.
GaussianInt unit_pow_i(int k);

// a = q*b + r with norm(r) <= norm(b)/2. q is a/b rounded to the nearest
// lattice point, halves rounded toward zero in each component, which makes
// the remainder a canonical function of the residue class.
std::pair<GaussianInt, GaussianInt> divrem(GaussianInt a, GaussianInt b);

GaussianInt mod(GaussianInt a, GaussianInt b);
bool divides(GaussianInt d, GaussianInt z);

// gcd up to units; result is primary when odd, 1+i-associate normalized when even.
GaussianInt gcd(GaussianInt a, GaussianInt b);
bool coprime(GaussianInt a, GaussianInt b);

// z == 1 mod (1+i)^3, checked by division.
bool is_primary_oracle(GaussianInt z);
// Residue-pattern fast path: (re mod 4, im mod 4) in {(1,0),(3,2)}.
// Equivalence with the oracle is property-tested up to norm 1e6.
bool is_primary(GaussianInt z);

// The unique primary associate u*z of an odd z, plus the k with z = i^k * (u*z).
GaussianInt primary_associate(GaussianInt z);
std::pair<GaussianInt, int> primary_decompose(GaussianInt z);

struct PrimaryFactorization {
    GaussianInt unit{1, 0};              // one of 1, i, -1, -i
    int exp2 = 0;                        // exponent of (1+i)
    std::vector<std::pair<GaussianInt, int>> factors;  // primary primes, sorted by (norm, re, im)

    GaussianInt reconstruct() const;
};

bool is_gaussian_prime(GaussianInt z);

// Full factorization via trial division of the norm.
PrimaryFactorization factor(GaussianInt z);

// c = c1 * c2^2 with c1 square-free, both primary. Input must be primary.
std::pair<GaussianInt, GaussianInt> squarefree_decompose(GaussianInt c);

bool is_squarefree(GaussianInt z);

// All primary z with norm(z) <= X, sorted by (norm, re, im).
std::vector<GaussianInt> enumerate_primary(long long X);

// Shared materialized enumeration; grows on demand, read-only once built.
class PrimaryTable {
public:
    static const std::vector<GaussianInt>& upto(long long X);
};

// (norm, re, im) lexicographic order used everywhere for determinism.
bool norm_order_less(GaussianInt a, GaussianInt b);

std::string to_string(GaussianInt z);
// Parses the CLI literal form "a+bi" / "a-bi" (also "a", "bi", "i", "-i").
GaussianInt parse_gaussian(const std::string& s);

struct GaussianIntHash {
    size_t operator()(GaussianInt z) const {
        uint64_t h = static_cast<uint64_t>(z.re) * 0x9e3779b97f4a7c15ULL;
        h ^= static_cast<uint64_t>(z.im) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<size_t>(h);
    }
};

}  // namespace zlab
