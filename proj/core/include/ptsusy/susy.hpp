// Factorization of the PT square-well Hamiltonian: ground state of H^(+),
// the complex integration constant x_R1, the superpotential W and the
// partner potential V^(-), and the jump analysis at the three interfaces.

#pragma once

#include <span>

#include "ptsusy/types.hpp"
#include "ptsusy/wavefunction.hpp"

namespace ptsusy {

// Matching constants of a PT-normalized eigenstate of H^(+):
//
//   psi_R2 = A sin[k(L-x)]                           psi_L2 = conj-mirror
//   psi_R1 = B cosh(kappa x) + i C/(kappa l) sinh(kappa x)
//   psi_L1 = conj-mirror (kappa -> kappa*)
//
// B and C real; normalization B = 1 except for the parity-degenerate
// Hermitian edge (g = 0, odd level) where psi(0) = 0 forces B = 0 and the
// state is represented with C alone.
struct GroundStatePlus {
    ProblemParams params;
    EnergyLevel level; // n = 0
    cplx A;
    double B;
    double C;
};

struct Factorization {
    ProblemParams params;
    EnergyLevel level0;
    double D0;   // energy shift = E_0
    double x_L2; // L + pi/(2 k_0)
    double x_R2; // L - pi/(2 k_0)
    cplx x_R1;
    cplx x_L1; // conj(x_R1)
};

// The real 2x2 system determining x_R1 = x_R1^r + i x_R1^i via
// kappa_0 x_R1 = X + i Y:
//   sinh X cosh X / M = N^r / D,  sin Y cos Y / M = N^i / D,
//   M = cosh^2 X cos^2 Y + sinh^2 X sin^2 Y.
struct XR1System {
    double X;
    double Y;
    double Nr;
    double Ni;
    double D;

    double residual_real() const;
    double residual_imag() const;
};

XR1System make_xr1_system(const ProblemParams& p, const EnergyLevel& level0, cplx x_r1);

struct XR1Result {
    cplx x_r1;           // Newton-polished value
    cplx x_r1_tracked;   // branch-tracked closed form (atanh)
    double dual_gap;     // |x_r1 - x_r1_tracked|
    double tanh_residual;
    double system_residual; // max of the two Eq-system residuals
};

// Matching constants at an arbitrary solved level (shared template).
// Throws matching_error if the realness assertion on C fails or the
// interface continuity residuals exceed 1e-8 (the input energy is then not
// an eigenvalue).
GroundStatePlus state_constants(const ProblemParams& p, const EnergyLevel& level);

// Ground-state specialization (requires level0.n == 0).
GroundStatePlus ground_state_plus(const ProblemParams& p, const EnergyLevel& level0);

PiecewiseWavefunction wavefunction(const GroundStatePlus& state);

// x_R1 computed two independent ways: (a) principal-branch complex atanh of
// the Eq.-(15) ratio, branch-corrected by continuity in g from the g = 0
// limit; (b) damped 2D Newton on the real system seeded by (a). Throws
// branch_error if they disagree by more than 1e-8.
XR1Result solve_xr1(const ProblemParams& p, const EnergyLevel& level0);

Factorization make_factorization(const ProblemParams& p, const EnergyLevel& level0);

// W(x), four branches; domain error at |x| >= L where the cot branches
// blow up. Continuous across the interfaces.
cplx superpotential(double x, const Factorization& fac);

// Closed-form W'(x) (discontinuous at -l, 0, l; interface points use the
// same side convention as partner_potential).
cplx superpotential_derivative(double x, const Factorization& fac);

// V^(-)(x). Interface conventions: +-l take the outer (field-free-side)
// branch; x = 0 returns the mean of the one-sided limits (real, PT-even).
cplx partner_potential(double x, const Factorization& fac);

struct PotentialJumps {
    cplx at_minus_l;
    cplx at_zero;
    cplx at_plus_l;
};

// One-sided-limit differences of V^(-) at -l, 0, +l evaluated exactly from
// the closed-form branches (right limit minus left limit).
PotentialJumps potential_jumps(const Factorization& fac);

// Jumps of V^(+) at the same points: (-ig, +2ig, -ig).
PotentialJumps vplus_jumps(const ProblemParams& p);

// (d/dx + W) applied to a closed-form wavefunction at x.
cplx apply_annihilation(const Factorization& fac, const PiecewiseWavefunction& wf, double x);

// max |(d/dx + W) psi| over the grid (psi' analytic per region). The grid
// must avoid +-L; W itself is continuous at the interior interfaces.
double zero_mode_residual(const Factorization& fac, const GroundStatePlus& gs,
                          std::span<const double> grid);

} // namespace ptsusy
