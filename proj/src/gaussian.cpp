#include "zlab/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>

namespace zlab {

namespace {

using i128 = __int128;

long long narrow(i128 v) {
    if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN))
        throw std::overflow_error("GaussianInt component overflow");
    return static_cast<long long>(v);
}

// round(num/den) with halves toward zero; den > 0.
long long round_half_to_zero(i128 num, i128 den) {
    i128 q = num / den;
    i128 r = num - q * den;  // sign of num's leftover
    if (r < 0) { q -= 1; r += den; }
    // now 0 <= r < den, num = q*den + r
    i128 twice = 2 * r;
    if (twice < den) return narrow(q);
    if (twice > den) return narrow(q + 1);
    // exact half: candidates q, q+1; take the one of smaller absolute value
    i128 a = q < 0 ? -q : q;
    i128 b = q + 1 < 0 ? -(q + 1) : q + 1;
    return narrow(a <= b ? q : q + 1);
}

}  // namespace

GaussianInt operator*(GaussianInt a, GaussianInt b) {
    i128 re = static_cast<i128>(a.re) * b.re - static_cast<i128>(a.im) * b.im;
    i128 im = static_cast<i128>(a.re) * b.im + static_cast<i128>(a.im) * b.re;
    return {narrow(re), narrow(im)};
}

long long norm(GaussianInt z) {
    i128 n = static_cast<i128>(z.re) * z.re + static_cast<i128>(z.im) * z.im;
    return narrow(n);
}

bool GaussianInt::is_unit() const { return norm(*this) == 1; }

GaussianInt unit_pow_i(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

std::pair<GaussianInt, GaussianInt> divrem(GaussianInt a, GaussianInt b) {
    if (b.is_zero()) throw std::domain_error("divrem: division by zero");
    i128 nb = static_cast<i128>(b.re) * b.re + static_cast<i128>(b.im) * b.im;
    i128 xr = static_cast<i128>(a.re) * b.re + static_cast<i128>(a.im) * b.im;
    i128 xi = static_cast<i128>(a.im) * b.re - static_cast<i128>(a.re) * b.im;
    GaussianInt q{round_half_to_zero(xr, nb), round_half_to_zero(xi, nb)};
    GaussianInt r = a - q * b;
    return {q, r};
}

GaussianInt mod(GaussianInt a, GaussianInt b) { return divrem(a, b).second; }

bool divides(GaussianInt d, GaussianInt z) {
    if (d.is_zero()) return z.is_zero();
    return mod(z, d).is_zero();
}

GaussianInt gcd(GaussianInt a, GaussianInt b) {
    while (!b.is_zero()) {
        a = std::exchange(b, mod(a, b));
    }
    if (a.is_zero()) return a;
    if (a.is_odd()) return primary_associate(a);
    // normalize unit so re > 0, im >= 0
    for (int k = 0; k < 4; ++k) {
        GaussianInt c = unit_pow_i(k) * a;
        if (c.re > 0 && c.im >= 0) return c;
    }
    return a;
}

bool coprime(GaussianInt a, GaussianInt b) { return gcd(a, b).is_unit(); }

bool is_primary_oracle(GaussianInt z) {
    static const GaussianInt opi3{-2, 2};  // (1+i)^3
    return divides(opi3, z - GaussianInt{1, 0});
}

bool is_primary(GaussianInt z) {
    int a = static_cast<int>(((z.re % 4) + 4) % 4);
    int b = static_cast<int>(((z.im % 4) + 4) % 4);
    return (a == 1 && b == 0) || (a == 3 && b == 2);
}

std::pair<GaussianInt, int> primary_decompose(GaussianInt z) {
    if (z.is_zero() || z.is_even())
        throw std::domain_error("primary_decompose: input must be odd and nonzero");
    for (int k = 0; k < 4; ++k) {
        GaussianInt c = unit_pow_i(k) * z;
        if (is_primary(c)) return {c, (4 - k) % 4};  // z = i^((4-k)%4) * c
    }
    throw std::logic_error("primary_decompose: no primary associate found");
}

GaussianInt primary_associate(GaussianInt z) { return primary_decompose(z).first; }

GaussianInt PrimaryFactorization::reconstruct() const {
    GaussianInt v = unit;
    for (int i = 0; i < exp2; ++i) v = v * GaussianInt{1, 1};
    for (auto& [p, e] : factors)
        for (int i = 0; i < e; ++i) v = v * p;
    return v;
}

bool is_gaussian_prime(GaussianInt z) {
    long long n = norm(z);
    if (n < 2) return false;
    auto rational_prime = [](long long v) {
        if (v < 2) return false;
        for (long long d = 2; d * d <= v; ++d)
            if (v % d == 0) return false;
        return true;
    };
    if (rational_prime(n)) return true;  // norm 2 or split prime
    // inert case: unit * p with p = 3 mod 4 prime, norm p^2
    long long r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(n))));
    for (long long p = r - 2; p <= r + 2; ++p)
        if (p > 1 && p * p == n)
            return p % 4 == 3 && rational_prime(p) &&
                   ((z.re == 0 && std::llabs(z.im) == p) || (z.im == 0 && std::llabs(z.re) == p));
    return false;
}

namespace {

// x with x^2 = -1 mod p for split p (p = 1 mod 4).
long long sqrt_minus_one(long long p) {
    auto powmod = [p](i128 b, long long e) {
        i128 r = 1;
        b %= p;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return static_cast<long long>(r);
    };
    for (long long a = 2;; ++a) {
        if (powmod(a, (p - 1) / 2) == p - 1) return powmod(a, (p - 1) / 4);
    }
}

}  // namespace

PrimaryFactorization factor(GaussianInt z) {
    if (z.is_zero()) throw std::domain_error("factor: zero input");
    if (norm(z) > kNormCeiling) throw std::domain_error("factor: norm above trial-division ceiling");
    PrimaryFactorization f;
    while (z.is_even()) {
        z = divrem(z, GaussianInt{1, 1}).first;
        ++f.exp2;
    }
    long long n = norm(z);
    for (long long p = 3; p * p <= n; p += 2) {
        if (n % p) continue;
        int en = 0;
        while (n % p == 0) { n /= p; ++en; }
        if (p % 4 == 3) {
            GaussianInt q = primary_associate(GaussianInt{p, 0});
            int e = en / 2;  // norm exponent is twice the element exponent
            for (int i = 0; i < e; ++i) z = divrem(z, q).first;
            f.factors.push_back({q, e});
        } else {
            GaussianInt pi = gcd(GaussianInt{p, 0}, GaussianInt{sqrt_minus_one(p), 1});
            for (GaussianInt q : {pi, pi.conj()}) {
                q = primary_associate(q);
                int e = 0;
                while (divides(q, z)) { z = divrem(z, q).first; ++e; }
                if (e) f.factors.push_back({q, e});
            }
        }
    }
    if (n > 1) {
        // leftover rational prime in the norm
        if (n % 4 == 3) throw std::logic_error("factor: inconsistent norm residue");
        long long r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(n))));
        if (r * r == n && r % 4 == 3) {
            GaussianInt q = primary_associate(GaussianInt{r, 0});
            z = divrem(z, q).first;
            f.factors.push_back({q, 1});
        } else {
            GaussianInt pi = gcd(GaussianInt{n, 0}, GaussianInt{sqrt_minus_one(n), 1});
            for (GaussianInt q : {pi, pi.conj()}) {
                q = primary_associate(q);
                int e = 0;
                while (divides(q, z)) { z = divrem(z, q).first; ++e; }
                if (e) f.factors.push_back({q, e});
            }
        }
    }
    if (!z.is_unit()) throw std::logic_error("factor: non-unit cofactor remains");
    f.unit = z;
    std::sort(f.factors.begin(), f.factors.end(),
              [](auto& a, auto& b) { return norm_order_less(a.first, b.first); });
    return f;
}

std::pair<GaussianInt, GaussianInt> squarefree_decompose(GaussianInt c) {
    if (!is_primary(c)) throw std::domain_error("squarefree_decompose: input not primary");
    PrimaryFactorization f = factor(c);
    GaussianInt c1{1, 0}, c2{1, 0};
    for (auto& [p, e] : f.factors) {
        if (e & 1) c1 = c1 * p;
        for (int i = 0; i < e / 2; ++i) c2 = c2 * p;
    }
    return {c1, c2};
}

bool is_squarefree(GaussianInt z) {
    for (auto& [p, e] : factor(z).factors)
        if (e > 1) return false;
    return true;
}

bool norm_order_less(GaussianInt a, GaussianInt b) {
    long long na = norm(a), nb = norm(b);
    if (na != nb) return na < nb;
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
}

std::vector<GaussianInt> enumerate_primary(long long X) {
    std::vector<GaussianInt> out;
    if (X < 1) return out;
    long long B = static_cast<long long>(std::sqrt(static_cast<double>(X))) + 1;
    for (long long a = -B; a <= B; ++a)
        for (long long b = -B; b <= B; ++b) {
            GaussianInt z{a, b};
            if (is_primary(z) && norm(z) <= X) out.push_back(z);
        }
    std::sort(out.begin(), out.end(), norm_order_less);
    return out;
}

const std::vector<GaussianInt>& PrimaryTable::upto(long long X) {
    static std::mutex mu;
    static std::vector<GaussianInt> table;
    static long long built = 0;
    std::scoped_lock lock(mu);
    if (X > built) {
        long long target = std::max(X, built * 2);
        table = enumerate_primary(target);
        built = target;
    }
    return table;
}

std::string to_string(GaussianInt z) {
    if (z.im == 0) return std::to_string(z.re);
    std::string im;
    if (z.im == 1) im = "i";
    else if (z.im == -1) im = "-i";
    else im = std::to_string(z.im) + "i";
    if (z.re == 0) return im;
    return std::to_string(z.re) + (z.im > 0 ? "+" : "") + im;
}

GaussianInt parse_gaussian(const std::string& s) {
    auto fail = [&] { throw std::invalid_argument("bad Gaussian integer literal: " + s); };
    if (s.empty()) fail();
    if (s.back() == 'i') {
        std::string body = s.substr(0, s.size() - 1);
        // split into optional real part and imaginary coefficient
        // find split: last '+'/'-' not at position 0
        size_t split = std::string::npos;
        for (size_t i = body.size(); i-- > 1;) {
            if (body[i] == '+' || body[i] == '-') { split = i; break; }
        }
        if (split == std::string::npos) {
            std::string tmp = body;
            if (tmp.empty() || tmp == "+" || tmp == "-")
                return {0, tmp == "-" ? -1 : 1};
            try { return {0, std::stoll(tmp)}; } catch (...) { fail(); }
        }
        long long re = 0, im = 0;
        try { re = std::stoll(body.substr(0, split)); } catch (...) { fail(); }
        std::string imtok = body.substr(split);
        if (imtok == "+") im = 1;
        else if (imtok == "-") im = -1;
        else {
            try { im = std::stoll(imtok); } catch (...) { fail(); }
        }
        return {re, im};
    }
    try {
        size_t used = 0;
        long long re = std::stoll(s, &used);
        if (used != s.size()) fail();
        return {re, 0};
    } catch (std::invalid_argument&) { fail(); } catch (std::out_of_range&) { fail(); }
    return {};
}

}  // namespace zlab
