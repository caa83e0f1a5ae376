#pragma once

#include <array>
#include <vector>

#include "ptsusy/types.hpp"

namespace ptsusy {

// Exact 2x2 map of (psi, psi') across one constant-potential region,
// built from the closed-form solutions of psi'' = c psi:
//
//   M = [ cosh(w d)        sinh(w d)/w ]      w = sqrt(c),  d = region width.
//       [ c sinh(w d)/w    cosh(w d)   ]
//
// The entries are entire functions of c, so the sqrt branch is irrelevant.
// det M = 1 (no first-derivative term in the ODE).
struct PropagatorStep {
    RegionTag region;
    // Oscillation rate sqrt(E - V) in the field-free regions (real k for
    // real E > 0); growth rate sqrt(V - E) (the kappa-like quantity) in the
    // well regions.
    cplx local_wavenumber;
    // Row-major 2x2: {m00, m01, m10, m11}.
    std::array<cplx, 4> matrix;

    cplx det() const { return matrix[0] * matrix[3] - matrix[1] * matrix[2]; }
};

std::array<PropagatorStep, 4> propagators(cplx E, const ProblemParams& p);

// psi_E(L) for the solution with psi_E(-L) = 0, psi_E'(-L) = 1, propagated
// in closed form through L2, L1, R1, R2. Zeros in E are the Dirichlet
// eigenvalues. For real E this is real up to roundoff (PT symmetry plus the
// real initial data force it through a Wronskian identity), so root finding
// happens on the real part.
cplx secular_function(cplx E, const ProblemParams& p);

enum class Regime { unbroken, broken_detected };

struct SpectrumReport {
    ProblemParams params;
    std::vector<EnergyLevel> levels;
    std::vector<double> secular_residuals; // |F(E_n)|
    Regime regime = Regime::unbroken;
};

// Lowest n_levels real eigenvalues, each refined to |dE| < tol.
// Scans Re F on a grid of spacing (pi/2L)^2/8, refines sign changes and
// modulus dips, polishes by Brent. Throws coalescence_error when the
// lowest pair has merged or two refined roots are closer than the
// coalescence gap 1e-6 (pi/2L)^2.
SpectrumReport solve_spectrum(const ProblemParams& p, int n_levels, double tol = 1e-10);

// Critical coupling g_c: bisection on g of the predicate "the lowest two
// roots of the secular function are real and distinct". Requires the
// predicate to be false at g_hi (throws std::runtime_error "g_hi below
// breaking" otherwise); returns the bracket midpoint once the width is
// below tol.
double critical_coupling(double L, double l, double g_hi, double tol = 1e-6);

namespace detail {
// All real secular roots below e_cap (refined); shared by solve_spectrum
// and the critical-coupling predicate.
std::vector<double> scan_real_roots(const ProblemParams& p, double e_cap);
} // namespace detail

} // namespace ptsusy
