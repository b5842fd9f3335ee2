#include "zlab/lfunctions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "zlab/parallel.hpp"

namespace zlab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// B_2 .. B_24
constexpr double kBernoulli[12] = {
    1.0 / 6,      -1.0 / 30,       1.0 / 42,      -1.0 / 30,
    5.0 / 66,     -691.0 / 2730,   7.0 / 6,       -3617.0 / 510,
    43867.0 / 798, -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730,
};

// Number of entries of the primary table with norm <= X.
size_t primary_count(const std::vector<GaussianInt>& tab, long long X) {
    const auto it = std::upper_bound(
        tab.begin(), tab.end(), X,
        [](long long x, GaussianInt z) { return x < norm(z); });
    return static_cast<size_t>(it - tab.begin());
}

}  // namespace

cplx hurwitz_zeta(cplx s, double a) {
    if (a <= 0) throw std::domain_error("hurwitz_zeta: a must be positive");
    if (s == cplx(1.0)) throw std::domain_error("hurwitz_zeta: pole at s=1");
    constexpr int M = 40, J = 12;
    cplx sum = 0;
    for (int n = 0; n < M; ++n) sum += std::exp(-s * std::log(a + n));
    const double q = a + M;
    const cplx qs = std::exp(-s * std::log(q));
    sum += qs * q / (s - 1.0);
    sum += 0.5 * qs;
    // Euler-Maclaurin correction: B_{2j}/(2j)! * s(s+1)...(s+2j-2) * q^{-s-2j+1}
    cplx rising = s;           // s(s+1)...(s+2j-2), built up incrementally
    double fact = 2.0;         // (2j)!
    cplx qpow = qs / q;        // q^{-s-2j+1}
    for (int j = 1; j <= J; ++j) {
        sum += kBernoulli[j - 1] / fact * rising * qpow;
        rising *= (s + cplx(2.0 * j - 1)) * (s + cplx(2.0 * j));
        fact *= (2.0 * j + 1) * (2.0 * j + 2);
        qpow /= q * q;
    }
    return sum;
}

cplx riemann_zeta(cplx s) { return hurwitz_zeta(s, 1.0); }

cplx dirichlet_beta(cplx s) {
    return std::exp(-s * std::log(4.0)) * (hurwitz_zeta(s, 0.25) - hurwitz_zeta(s, 0.75));
}

cplx zeta_k(cplx s) { return riemann_zeta(s) * dirichlet_beta(s); }

cplx zeta_k2(cplx s, long long X) {
    if (X <= 0) return zeta_k(s) * (1.0 - std::exp(-s * std::log(2.0)));
    if (s.real() <= 1.0)
        throw std::domain_error("zeta_k2: direct mode needs Re s > 1");
    const auto& tab = PrimaryTable::upto(X);
    const size_t cnt = primary_count(tab, X);
    return block_sum(static_cast<long long>(cnt), [&](long long i) {
        return std::exp(-s * std::log(static_cast<double>(norm(tab[static_cast<size_t>(i)]))));
    });
}

LValue l_direct(const QuadraticCharacter& chi, cplx s, long long X) {
    if (s.real() <= 1.0) throw std::domain_error("l_direct: needs Re s > 1");
    if (X < 1) throw std::domain_error("l_direct: X must be >= 1");
    const auto& tab = PrimaryTable::upto(X);
    const size_t cnt = primary_count(tab, X);
    const SymbolTable sym(chi.modulus());
    const UnitTwist tw = chi.twist();
    LValue out;
    out.method = LMethod::direct;
    out.terms_used = static_cast<long long>(cnt);
    out.value = block_sum(static_cast<long long>(cnt), [&](long long i) -> cplx {
        const GaussianInt n = tab[static_cast<size_t>(i)];
        const int c = sym(n) * psi_eval(tw, n);
        if (c == 0) return {};
        return static_cast<double>(c) *
               std::exp(-s * std::log(static_cast<double>(norm(n))));
    });
    // tail integral times odd-ideal density pi/8
    out.abs_error_estimate =
        kPi / 8.0 * std::pow(static_cast<double>(X), 1.0 - s.real()) / (s.real() - 1.0);
    return out;
}

namespace {

// Shared core of l_critical / l_continued: the two-sided smoothed sum
//   L(s,chi) = sum_A chi(A) N(A)^{-s} K1(N(A)/Q)
//            + (Nchi/pi^2)^{(1-2s)/2} sum_A chi(A) N(A)^{-(1-s)} K2(N(A)/Q)
// with K1 the kernel for Gamma(s+z)/Gamma(s) and K2 for Gamma(1-s+z)/Gamma(s).
LValue l_afe(const QuadraticCharacter& chi, cplx s, const ContourSpec& spec, LMethod tag) {
    if (chi.is_principal()) throw std::domain_error("l_afe: principal character");
    const double nchi = static_cast<double>(chi.conductor_norm());
    const double q = std::sqrt(nchi);
    const AfeKernel& k1 = shared_kernel(s, s, spec);
    const AfeKernel& k2 = shared_kernel(1.0 - s, s, spec);
    const cplx eps = std::pow(cplx(nchi / (kPi * kPi)), (1.0 - 2.0 * s) / 2.0);
    const double eps_abs = std::max(std::abs(eps), 1e-8);

    const double xi1 = k1.cutoff_xi(spec.kernel_tol);
    const double xi2 = k2.cutoff_xi(spec.kernel_tol / std::max(1.0, eps_abs));
    const long long n1 = std::max<long long>(1, static_cast<long long>(q * xi1));
    const long long n2 = std::max<long long>(1, static_cast<long long>(q * xi2));
    const long long nmax = std::max(n1, n2);

    const auto& tab = PrimaryTable::upto(nmax);
    const size_t cnt = primary_count(tab, nmax);

    // one coefficient pass, reused by both sides and every 2-power layer
    const SymbolTable sym(chi.modulus());
    const UnitTwist tw = chi.twist();
    std::vector<signed char> coef(cnt);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(cnt); ++i) {
        const GaussianInt n = tab[static_cast<size_t>(i)];
        coef[static_cast<size_t>(i)] =
            static_cast<signed char>(sym(n) * psi_eval(tw, n));
    }

    const int e2 = chi.eps2();
    LValue out;
    out.method = tag;

    auto side = [&](const AfeKernel& ker, cplx e, long long nside) -> cplx {
        cplx total = 0;
        for (int j = 0;; ++j) {
            const long long p2 = 1LL << j;
            if (p2 > nside) break;
            const size_t m = primary_count(tab, nside / p2);
            const double scale = static_cast<double>(p2) / q;
            const cplx layer = block_sum(static_cast<long long>(m), [&](long long i) -> cplx {
                const int c = coef[static_cast<size_t>(i)];
                if (c == 0) return {};
                const double nn = static_cast<double>(norm(tab[static_cast<size_t>(i)]));
                return static_cast<double>(c) * std::exp(-e * std::log(nn)) *
                       ker.interp(nn * scale);
            });
            out.terms_used += static_cast<long long>(m);
            total += std::pow(cplx(static_cast<double>(e2)), j) *
                     std::exp(-e * (j * std::log(2.0))) * layer;
            if (e2 == 0) break;
        }
        return total;
    };

    const cplx s1 = side(k1, s, n1);
    const cplx s2 = side(k2, 1.0 - s, n2);
    out.value = s1 + eps * s2;
    // heuristic: truncated tail at the kernel tolerance level over the last
    // decade of terms, plus a quadrature/interpolation allowance
    const double tail1 = spec.kernel_tol * kPi / 4.0 *
                         std::pow(static_cast<double>(n1), std::max(0.0, 1.0 - s.real()));
    const double tail2 = spec.kernel_tol * kPi / 4.0 *
                         std::pow(static_cast<double>(n2), std::max(0.0, s.real()));
    out.abs_error_estimate = tail1 + eps_abs * tail2 + 1e-11 * (1.0 + std::abs(out.value));
    return out;
}

}  // namespace

LValue l_critical(const QuadraticCharacter& chi, double t, const ContourSpec& spec) {
    return l_afe(chi, cplx(0.5, t), spec, LMethod::afe_critical);
}

LValue l_continued(const QuadraticCharacter& chi, cplx s, const ContourSpec& spec) {
    if (s.real() <= 0.0 || s.real() >= 2.0)
        throw std::domain_error("l_continued: need 0 < Re s < 2");
    return l_afe(chi, s, spec, LMethod::continued);
}

cplx euler_adjust(GaussianInt d, cplx s, UnitTwist psi) {
    if (!is_primary(d)) throw std::domain_error("euler_adjust: d must be primary");
    const auto [d0, d1] = squarefree_decompose(d);
    (void)d1;
    cplx prod = 1.0;
    for (const auto& [p, e] : factor(d).factors) {
        if (e < 2) continue;  // p does not divide d1
        const int c = symbol(d0, p) * psi_eval(psi, p);
        if (c == 0) continue;
        prod *= 1.0 - static_cast<double>(c) *
                          std::exp(-s * std::log(static_cast<double>(norm(p))));
    }
    return prod;
}

cplx two_euler_factor(const QuadraticCharacter& chi, cplx s) {
    const int e2 = chi.eps2();
    if (e2 == 0) return 1.0;
    return 1.0 - static_cast<double>(e2) * std::exp(-s * std::log(2.0));
}

}  // namespace zlab
