#pragma once

#include "ptsusy/types.hpp"

namespace ptsusy {

// Validated construction; throws std::domain_error naming the violated
// inequality (L > 0, 0 < l < L, g >= 0).
ProblemParams make_problem(double L, double l, double g);

// V^(+)(x). Values at the measure-zero interface points are fixed by
// convention: x = +-l takes the limit from the field-free side (0),
// x = 0 returns 0. Throws std::domain_error for |x| > L.
cplx eval_vplus(double x, const ProblemParams& p);

struct KappaDecomposition {
    double s;
    double t;
    cplx kappa;
};

// Splits a real energy into the (s, t) pair of kappa = s + i t with
// t = sqrt((sqrt(E^2+g^2)+E)/2), s = sqrt((sqrt(E^2+g^2)-E)/2), both
// non-negative, so that E = t^2 - s^2 and g = 2 s t.
KappaDecomposition decompose_kappa(double E, double g);

// Packages a solved eigenvalue as an EnergyLevel (requires E > 0).
EnergyLevel make_level(int n, double E, double g);

} // namespace ptsusy
