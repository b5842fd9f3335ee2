#pragma once

#include <complex>

#include "zlab/characters.hpp"
#include "zlab/contour.hpp"

namespace zlab {

// Euler-Maclaurin Hurwitz zeta, s != 1, a > 0. Good to ~1e-14 relative for
// moderate |s| (|Im s| up to a few hundred is plenty here).
cplx hurwitz_zeta(cplx s, double a);
cplx riemann_zeta(cplx s);
// L-function of the nontrivial character mod 4.
cplx dirichlet_beta(cplx s);

// Dedekind zeta of Q(i): zeta(s) * beta(s), continued.
cplx zeta_k(cplx s);

// 2-removed Dedekind zeta: sum over odd ideals of N^{-s}. X = 0 evaluates the
// product zeta(s) beta(s) (1 - 2^{-s}) (any s != 1); X > 0 sums the Dirichlet
// series over primary generators with norm <= X (needs Re s > 1).
cplx zeta_k2(cplx s, long long X = 0);

enum class LMethod { direct, afe_critical, continued };

struct LValue {
    cplx value;
    // Heuristic bound on |error|: truncated-tail estimate plus a fixed
    // quadrature allowance; tested, not proven.
    double abs_error_estimate = 0;
    long long terms_used = 0;
    LMethod method = LMethod::direct;
};

// Partial sum over primary n, norm <= X, of chi(n) N(n)^{-s}. Re s > 1.
// This is the odd-ideal (2-removed) Dirichlet series of chi.
LValue l_direct(const QuadraticCharacter& chi, cplx s, long long X);

// L(1/2 + it, chi) by the two-sided smoothed approximate functional
// equation; chi must be non-principal and should have square-free modulus so
// that its values coincide with the inducing primitive character on odd
// arguments. The value is the full L-function: when the conductor is odd the
// even ideals enter through powers of eps2 = chi at the ideal (1+i).
LValue l_critical(const QuadraticCharacter& chi, double t, const ContourSpec& spec = {});

// Same machinery at a general point of the strip 0 < Re s < 2. Must agree
// with l_direct on (1, 2]; that overlap is the correctness gate.
LValue l_continued(const QuadraticCharacter& chi, cplx s, const ContourSpec& spec = {});

// Product over odd primes dividing d_1 (d = d_0 d_1^2) of
// 1 - chi_{d_0}psi(p) N(p)^{-s}; converts L of the primitive-part character
// into the inner sum of the double series. The (1+i) factor is excluded by
// convention, matching sums that run over odd ideals only.
cplx euler_adjust(GaussianInt d, cplx s, UnitTwist psi);

// 1 - eps2 * 2^{-s}: relates the full L to its 2-removed (odd-ideal) form.
// Equals 1 when the conductor is even.
cplx two_euler_factor(const QuadraticCharacter& chi, cplx s);

}  // namespace zlab
