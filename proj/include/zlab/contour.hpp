#pragma once

#include <complex>
#include <vector>

namespace zlab {

using cplx = std::complex<double>;

// Principal-branch log Gamma. Lanczos with reflection for Re(s) < 1/2; in the
// reflection region the imaginary part may be off by a multiple of 2*pi (we
// only ever exponentiate differences), the real part is exact.
cplx log_gamma(cplx s);

// The free even test function H in the kernel integral. gauss1 is e^{z^2},
// gauss2 is e^{2z^2}; values computed with either must agree, which is the
// main internal consistency check on the whole pipeline.
enum class HChoice { gauss1, gauss2 };

struct ContourSpec {
    double sigma = 2.0;       // contour abscissa
    double half_width = 8.0;  // truncate |Im z| <= half_width
    double step = 0.05;       // trapezoid step
    HChoice h_choice = HChoice::gauss1;
    // Smoothed sums are truncated where |kernel| falls below this. The
    // kernels decay only Gaussian-in-log, so the term count grows quickly as
    // this tightens; callers that feed coarse gates (exponent fits, bound
    // grids) loosen it.
    double kernel_tol = 4e-13;

    friend bool operator==(const ContourSpec&, const ContourSpec&) = default;
};

// Smoothing kernel
//   K(xi) = 1/(2 pi i) \int_(sigma) Gamma(a_num + z)/Gamma(a_den)
//                                   (pi xi)^{-z} H(z)/z dz
// evaluated by trapezoid quadrature on the truncated vertical line. The
// critical-line kernel G_t has a_num = a_den = 1/2 + it; the mirror kernel of
// the off-line sums has a_num = 1 - s, a_den = s (the denominator absorbs the
// Gamma factor of the root-number term so no intermediate overflows).
//
// Besides direct quadrature the kernel carries a cubic-Hermite table in
// L = log(pi xi) (exact derivatives at the nodes), built once; interpolation
// error budget 1e-10 against direct quadrature.
class AfeKernel {
public:
    AfeKernel(cplx a_num, cplx a_den, const ContourSpec& spec);

    cplx value(double xi) const;    // direct quadrature
    cplx interp(double xi) const;   // table lookup, 0 beyond the decay cutoff

    // Largest xi at which |K| still reaches tol; sums truncated there.
    double cutoff_xi(double tol) const;

    cplx a_num() const { return a_num_; }
    const ContourSpec& spec() const { return spec_; }

private:
    cplx a_num_, a_den_;
    ContourSpec spec_;
    std::vector<cplx> weights_;  // quadrature weight per node
    std::vector<double> ynodes_;

    // table over L = log(pi xi)
    double table_l0_, table_step_;
    std::vector<cplx> table_g_, table_dg_;
    double peak_abs_ = 0;
};

// Process-wide kernel cache; kernels are immutable once built and shared
// read-only across threads.
const AfeKernel& shared_kernel(cplx a_num, cplx a_den, const ContourSpec& spec);

// G_t(xi) of the critical-line approximate functional equation, by direct
// quadrature.
cplx gfactor(double t, double xi, const ContourSpec& spec = {});

}  // namespace zlab
