#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

#include "zlab/lfunctions.hpp"

namespace zlab {

// Smooth window on the positive axis. bump() is the canonical bump on [1,2],
//   W(x) = exp(1 - 1/(1-(2x-3)^2)) on (1,2), 0 outside.
// dyadic(j) is the member sigma(x/2^j) - sigma(x/2^(j+1)) of a smooth
// partition of unity built from the step sigma(x) = f(x-1)/(f(x-1)+f(2-x)),
// f(y) = exp(-1/y); its support is (2^j, 2^(j+2)) and the members sum to 1
// for every x > 1.
class WeightSpec {
public:
    static WeightSpec bump();
    static WeightSpec dyadic(int level);
    // pointwise sum of two windows (support hull); for linearity plumbing
    friend WeightSpec operator+(const WeightSpec& a, const WeightSpec& b);

    double operator()(double x) const { return f_(x); }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    const std::string& name() const { return name_; }

private:
    WeightSpec() = default;
    double lo_ = 1, hi_ = 2;
    std::string name_;
    std::function<double(double)> f_;
};

// The parameter bookkeeping for evaluations near the critical lines
// Im s = t, Im w = u.
struct ConductorParams {
    double u = 0, t = 0;
    double U, T, S, C, X;  // U=(1/2+|u|)^2, T=(1/2+|t|)^2, S=(1/2+|u+t|)^2,
                           // C=SU, X=STU
    double Cut;            // analytic conductor |1/2+it|^2 |1/2+i(u+t)|^2 |1/2+iu|^2

    ConductorParams(double u_, double t_);
};

// Z(s,w;psi,psi') by direct double summation over primary m, n with
// N(m) <= M, N(n) <= N:
//   zeta_k2(2s+2w-1) * sum_{m,n} (m/n) psi(n) psi'(m) N(m)^-w N(n)^-s.
// Needs Re s > 1, Re w > 1, Re(2s+2w-1) > 1.
cplx z_direct(cplx s, cplx w, UnitTwist psi, UnitTwist psi2, long long M, long long N);

// Same function with the inner sum recognized as a 2-removed Hecke L-value:
//   zeta_k2(2s+2w-1) * sum_{m <= M} euler_adjust(m,s,psi)
//                      * L2(s, chi_{m0} psi) * psi'(m) N(m)^-w,
// m0 the square-free part of m. L2 is zeta_k2(s) when chi_{m0}psi is
// principal, l_direct for Re s >= 2, and l_continued * two_euler_factor on
// 0 < Re s < 2. Valid for 0 < Re s (away from the polar set) and Re w large
// enough for the m-sum to converge.
cplx z_via_l(cplx s, cplx w, UnitTwist psi, UnitTwist psi2, long long M);

// |Z(1-s, s+w-1/2) - pi^(1-2s) N(psi)^((2s-1)/2) Gamma(s)/Gamma(1-s) Z(s,w)|
// for psi != psi_1; N(psi) is the conductor norm of the pure twist.
double check_fe_nontrivial(cplx s, cplx w, UnitTwist psi, UnitTwist psi2,
                           long long M = 400);

// Residual of the psi_1 functional equation, which expresses
// Z(1-s, s+w-1/2; psi_1, psi') through three signed combinations of
// Z(s, w; psi_1, psi' * rho) over the unit twists rho.
double check_fe_psi1(cplx s, cplx w, UnitTwist psi2, long long M = 400);

// (s-1) Z(s,w;psi_1,psi2) extrapolated to s=1 (Neville over
// delta in {0.1, 0.05, 0.025}); target is pi * zeta_k2(2w) / 8.
cplx residue_s1(cplx w, UnitTwist psi2 = UnitTwist::one, long long M = 400);

// Concurrent at-most-once cache of the 2-removed critical-line values
//   L2(1/2+it, chi_{d0} psi)
// keyed by (d0, psi, t). Principal keys resolve to zeta_k(1/2+it) times the
// removed Euler factor at 2, i.e. zeta_k2(1/2+it).
class LCriticalCache {
public:
    cplx get(GaussianInt d0, UnitTwist psi, double t);
    size_t size() const;

private:
    struct Slot;
    using Key = std::tuple<long long, long long, int, double>;
    mutable std::mutex mu_;
    std::map<Key, std::shared_ptr<Slot>> map_;
};

// The smoothed window sum
//   D(t,u,P;W) = sum_{d,m primary} euler_adjust(d,1/2+it,psi)
//                * L2(1/2+it, chi_{d0}psi) * psi'(d)
//                / (N(d)^(1/2+iu) N(m)^(1+2i(u+t))) * W(N(d m^2)/P).
// Terms are generated in canonical (m, d) order and reduced with the
// deterministic block sum, so the value is thread-count independent. A
// shared cache may be passed to reuse L-values across windows.
cplx d_sum(double t, double u, double P, const WeightSpec& W, UnitTwist psi,
           UnitTwist psi2, LCriticalCache* cache = nullptr);

// Reference path: same sum, no cache, fresh L evaluation per term.
cplx d_sum_reference(double t, double u, double P, const WeightSpec& W,
                     UnitTwist psi, UnitTwist psi2);

// The bilinear kernel shared by the majorant shapes:
//   sum_{d0 sf primary, N(d0)<=Mmax} sum_{n primary, N(n)<=Nmax}
//     chi_{d0}psi(n) psi'(d0) N(cond(d0,psi))^cp N(n)^-a N(d0)^-b.
// The conductor factor is skipped (treated as 1) when cp == 0.
cplx bilinear_char_sum(long long Mmax, long long Nmax, cplx a_exp, cplx b_exp,
                       UnitTwist psi, UnitTwist psi2, cplx conductor_power);

// Shared lazily-built character objects keyed by (modulus, twist); conductor
// scans are expensive enough to be worth doing once per modulus.
const QuadraticCharacter& cached_char(GaussianInt m0, UnitTwist psi);

}  // namespace zlab
