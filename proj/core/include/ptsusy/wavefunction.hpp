#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ptsusy/types.hpp"

namespace ptsusy {

// Four-region closed-form wavefunction with analytic derivative.
// The closures receive x directly; region selection follows region_of.
struct PiecewiseWavefunction {
    ProblemParams params;
    std::array<std::function<cplx(double)>, 4> region_value; // L2, L1, R1, R2
    std::array<std::function<cplx(double)>, 4> region_deriv;

    cplx value(double x) const;
    cplx deriv(double x) const;

    std::vector<ComplexSample> sample(std::span<const double> grid) const;
    double sup_norm(std::span<const double> grid) const;
};

// n points strictly inside (-L+margin, L-margin), symmetric about 0 so that
// x_i = -x_{n-1-i} exactly (PT checks compare conjugate-mirrored pairs).
std::vector<double> symmetric_grid(const ProblemParams& p, int n, double margin);

} // namespace ptsusy
