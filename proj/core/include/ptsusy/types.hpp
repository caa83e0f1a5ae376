// Domain types for the PT-symmetric square well in a box and its SUSY partner.
//
// Units: hbar = 2m = 1, so H = -d^2/dx^2 + V(x) on (-L, L) with Dirichlet
// walls at x = +-L. All quantities are dimensionless.

#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace ptsusy {

using cplx = std::complex<double>;

// Model definition: box half-width L, well half-width l, imaginary strength g.
// V(x) = 0 for l < |x| < L, +ig for 0 < x <= l, -ig for -l <= x < 0.
struct ProblemParams {
    double L = 1.0;
    double l = 0.5;
    double g = 0.0;

    bool hermitian() const { return g == 0.0; }
    friend bool operator==(const ProblemParams&, const ProblemParams&) = default;
};

enum class RegionTag { L2, L1, R1, R2 };

// One of the four constant-potential intervals, in the order
// L2 = (-L,-l), L1 = (-l,0), R1 = (0,l), R2 = (l,L).
struct Region {
    RegionTag tag;
    double lo;
    double hi;
};

std::array<Region, 4> regions_of(const ProblemParams& p);

// Region containing x. Interface points use the same convention as
// eval_vplus: +-l belong to the field-free side, 0 to R1.
RegionTag region_of(const ProblemParams& p, double x);

const char* region_name(RegionTag tag);

// One solved level of H^(+): E = k^2 = t^2 - s^2, g = 2 s t,
// kappa = s + i t (so kappa^2 = -E + i g). s >= 0, t > 0, k > 0.
struct EnergyLevel {
    int n = 0;
    double E = 0.0;
    double k = 0.0;
    double s = 0.0;
    double t = 0.0;
    cplx kappa{0.0, 0.0};
};

struct ComplexSample {
    double x;
    cplx value;
};

// ---- error taxonomy -------------------------------------------------------

// Two tracked roots merged / left the real axis: PT symmetry is broken at
// these parameters.
struct coalescence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The matching conditions could not be satisfied (input energy is not an
// eigenvalue, or the realness assertion on the constants failed).
struct matching_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Closed-form and Newton determinations of x_R1 disagree.
struct branch_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A partner-eigenfunction interface condition failed.
struct continuity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ptsusy
