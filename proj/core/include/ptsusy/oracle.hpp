// Brute-force verification backend: finite-difference eigensolver for
// sampled complex potentials on the box, plus a pointwise ODE-residual
// evaluator. Everything the closed forms claim is tested against this.

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ptsusy/types.hpp"

namespace ptsusy {

using PotentialSampler = std::function<cplx(double)>;

// Interior nodes x_j = -L + j h, j = 1..N, h = 2L/(N+1).
struct Grid {
    int N = 0;
    double h = 0.0;
    double L = 0.0;

    double node(int j) const { return -L + j * h; } // 1-based
    std::vector<double> nodes() const;
};

Grid make_grid(double L, int N);

// Bumps N (upward, preserving parity-free choice) until none of the
// interface points {-l, 0, l} coincides with a node.
int adjust_interior_count(const ProblemParams& p, int N);

struct OracleSpectrum {
    std::vector<cplx> eigenvalues; // sorted by real part
    std::vector<std::vector<cplx>> eigenvectors; // optional, sup-norm 1
    Grid grid;
    bool extrapolated = false;
    // per-level |E_ext - E_fine| when extrapolated; raw-solve estimate otherwise
    std::vector<double> error_estimates;
};

struct OracleOptions {
    bool want_vectors = false;
    // N at or below this uses the dense LAPACK solver (all eigenvalues of the
    // full matrix); above it, shift-inverted Rayleigh-quotient iteration on
    // the tridiagonal matrix seeded from the closed-form free-box spectrum.
    int dense_threshold = 1201;
};

// Lowest n_levels eigenvalues (by real part) of the Dirichlet FD matrix
//   -(psi_{j+1} - 2 psi_j + psi_{j-1})/h^2 + V_j psi_j.
// V_j is the sampled potential except in cells containing one of the known
// interface points {-l, 0, l}, where the cell average (split at the jump)
// is used — this keeps the eigenvalue error at O(h^2) for discontinuous
// potentials. Requires N >= 200 and finite samples; throws
// std::runtime_error("non-finite potential sample") otherwise.
OracleSpectrum fd_spectrum(const PotentialSampler& potential, const ProblemParams& p, int N,
                           int n_levels, const OracleOptions& opts = {});

// Two-resolution solve (N and ~2N, both adjusted) plus per-level Richardson
// elimination of the h^2 error term.
OracleSpectrum fd_spectrum_extrapolated(const PotentialSampler& potential, const ProblemParams& p,
                                        int N, int n_levels, const OracleOptions& opts = {});

// max over admitted nodes of |-psi'' + (V - E) psi| / max|psi|, second
// derivative by the 3-point stencil on the grid spacing. Nodes within
// margin*h of any point in `special` (and of the walls) are excluded.
double ode_residual(const std::function<cplx(double)>& psi, double E,
                    const PotentialSampler& potential, const Grid& grid,
                    const std::vector<double>& special, double margin = 10.0);

} // namespace ptsusy
