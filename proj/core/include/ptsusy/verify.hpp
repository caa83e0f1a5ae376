#pragma once

#include "ptsusy/oracle.hpp"
#include "ptsusy/partner.hpp"
#include "ptsusy/spectrum.hpp"
#include "ptsusy/susy.hpp"
#include "ptsusy/verification.hpp"

namespace ptsusy {

struct VerifyOptions {
    int n_partner = 2;      // partner eigenfunctions checked (n = 0..n_partner-1)
    int oracle_N = 1001;    // coarse resolution of the isospectrality check
    int grid_points = 1000; // sampling grid for the pointwise identities
    double tol = 1e-10;     // spectrum solve tolerance
};

// The full invariant battery for one parameter point: spectrum residuals,
// zero mode, both Riccati signs, PT symmetries, W continuity, jump algebra,
// x_R1 dual solve and constraints, partner matching and ODE residuals, and
// oracle isospectrality. When l is within 1e-3 L of either limit (l -> 0 or
// l -> L) the corresponding closed-form limit profile comparison is added.
VerificationReport run_verification(const ProblemParams& p, const VerifyOptions& opts = {});

// Partner potential of the plain real box (the l -> 0 limit profile).
cplx plain_box_partner(double x, double L);

// Partner potential of the single-discontinuity PT well on (-L, L)
// (the l -> L limit profile); solves that model's own secular condition
// Re[kappa coth(kappa L)] = 0 internally.
struct SingleWellPartner {
    double L;
    double g;
    double E0;
    cplx kappa0;
    cplx x_r1; // L - i pi / (2 kappa0)

    cplx operator()(double x) const;
};
SingleWellPartner make_single_well_partner(double L, double g);

} // namespace ptsusy
