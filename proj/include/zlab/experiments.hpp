#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zlab/ddseries.hpp"

namespace zlab {

// One row of an experiment grid. params keeps insertion order so emitted
// files are deterministic.
struct ExperimentRecord {
    std::string experiment_id;
    std::vector<std::pair<std::string, std::string>> params;
    cplx value;
    double bound = 0;
    double ratio = 0;  // |value| / bound when bound > 0
    std::string notes;
};

struct MomentScanResult {
    std::vector<ExperimentRecord> records;  // one per dyadic X, S2 then S1
    double exponent = 0;                    // slope of log S2 vs log X
};

// S2(X) = sum over square-free primary m, N(m) <= X of |L(1/2+it, chi_m)|^2
// (the m=1 term is |zeta_k(1/2+it)|^2), S1 the first-moment analogue, for
// X = 2^6, 2^7, ..., Xmax.
MomentScanResult moment_scan(long long Xmax, double t);

struct SieveTestResult {
    std::vector<ExperimentRecord> records;  // one per trial
    double max_ratio = 0;
};

// Normalized quadratic-symbol bilinear ratio
//   sum*_m |sum*_n a_n (n/m)|^2 / ((M+N) sum |a_n|^2)
// over square-free primary m <= M, n <= N, with Rademacher +-1 coefficients
// drawn deterministically from the seed; max over trials.
SieveTestResult sieve_test(long long M, long long N, int trials, uint64_t seed);

struct DBoundResult {
    std::vector<ExperimentRecord> records;
    double fitted_constant = 0;           // max |D| / B over the admissible grid
    bool crossover_ok = true;             // branch switch within 4x of U^(2/3)T^(1/3)
    double max_conjugation_residual = 0;  // max |D(-t,-u) - conj D(t,u)|
};

// |d_sum| against B(t,u,P) = U^0.1 min(P^(1/2)+(TP)^(1/4),
// (TP)^(1/4)+(T/P)^(1/4)U^(1/2)) over the grid, restricted to T <= U and
// P <= (US)^0.6. Throws if any (t,u) violates T <= U.
DBoundResult d_bound_experiment(const std::vector<double>& t_grid,
                                const std::vector<double>& u_grid,
                                const std::vector<double>& P_grid,
                                UnitTwist psi = UnitTwist::i,
                                UnitTwist psi2 = UnitTwist::one);

struct MajorantResult {
    cplx d_value;
    double majorant = 0;  // the quadrature value R
    double ratio = 0;     // |d_value| / R
};

// Quadrature majorant for the windowed sum: contours at Re = 0.1 with
// |Im| <= X^0.1, step 0.05, truncations N(m) <= P^0.6,
// N(d0) <= P^1.1/N(m)^2, N(n) <= (T X^0.1 P)^0.6, all scaled by
// `scale` (for monotonicity checks).
MajorantResult majorant_compare(double t, double u, double P,
                                UnitTwist psi = UnitTwist::i,
                                UnitTwist psi2 = UnitTwist::one,
                                double scale = 1.0);

// Least-squares line through (log x, log y). Needs >= 3 points, positive
// coordinates. Returns (slope, intercept).
std::pair<double, double> exponent_fit(
    const std::vector<std::pair<double, double>>& points);

}  // namespace zlab
