// Eigenfunctions of the partner Hamiltonian H^(-), obtained by applying the
// intertwiner A = d/dx + W to the excited states of H^(+).

#pragma once

#include "ptsusy/susy.hpp"
#include "ptsusy/verification.hpp"

namespace ptsusy {

// Matching constants of psi^(+)_{n+1} (same closed-form template as the
// ground state, with k_{n+1}, kappa_{n+1}).
struct ExcitedStatePlus {
    ProblemParams params;
    EnergyLevel level; // n >= 1
    cplx A;
    double B;
    double C;
};

ExcitedStatePlus excited_state_plus(const ProblemParams& p, const EnergyLevel& level);

PiecewiseWavefunction wavefunction(const ExcitedStatePlus& state);

// psi^(-)_n = Cminus * (d/dx + W) psi^(+)_{n+1} in expanded four-region
// closed form (sin*cot products expanded to avoid 0*inf at the walls).
// One shared constant Cminus across all four regions; PT symmetry of the
// function holds iff Cminus is purely imaginary.
struct PartnerEigenfunction {
    int n = 0;
    EnergyLevel level; // the E^(+)_{n+1} level this maps down from
    cplx Cminus{0.0, 1.0};
    ProblemParams params;
    PiecewiseWavefunction psi;
    // magnitude of the template coefficients; scales the evaluation-noise
    // floor of the interface comparisons near the wall poles
    double coef_scale = 1.0;
};

// Throws continuity_error (naming the interface) if a value or derivative
// continuity residual at -l, 0, +l exceeds 1e-8 relative; throws
// std::invalid_argument when fac and ex come from different parameters or
// ex is not the (n+1)-th level.
PartnerEigenfunction partner_eigenfunction(int n, const Factorization& fac,
                                           const ExcitedStatePlus& ex,
                                           cplx Cminus = cplx(0.0, 1.0));

// Residual battery: Dirichlet ends, the six continuity conditions,
// constraints (C1), (C2), the W-continuity relation at l, and PT symmetry
// of the eigenfunction. Pass threshold 1e-8 per item.
VerificationReport check_matching(const PartnerEigenfunction& pe, const Factorization& fac);

} // namespace ptsusy
