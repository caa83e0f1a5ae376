#include "ptsusy/potential.hpp"

#include <cmath>

namespace ptsusy {

std::array<Region, 4> regions_of(const ProblemParams& p) {
    return {Region{RegionTag::L2, -p.L, -p.l}, Region{RegionTag::L1, -p.l, 0.0},
            Region{RegionTag::R1, 0.0, p.l}, Region{RegionTag::R2, p.l, p.L}};
}

RegionTag region_of(const ProblemParams& p, double x) {
    if (x <= -p.l) return RegionTag::L2;
    if (x < 0.0) return RegionTag::L1;
    if (x < p.l) return RegionTag::R1;
    return RegionTag::R2;
}

const char* region_name(RegionTag tag) {
    switch (tag) {
        case RegionTag::L2: return "L2";
        case RegionTag::L1: return "L1";
        case RegionTag::R1: return "R1";
        case RegionTag::R2: return "R2";
    }
    return "?";
}

ProblemParams make_problem(double L, double l, double g) {
    if (!(L > 0.0)) throw std::domain_error("make_problem: L > 0 violated");
    if (!(l > 0.0)) throw std::domain_error("make_problem: l > 0 violated");
    if (!(l < L)) throw std::domain_error("make_problem: l < L violated");
    if (!(g >= 0.0)) throw std::domain_error("make_problem: g >= 0 violated");
    return ProblemParams{L, l, g};
}

cplx eval_vplus(double x, const ProblemParams& p) {
    if (std::abs(x) > p.L)
        throw std::domain_error("eval_vplus: |x| > L");
    if (std::abs(x) >= p.l || x == 0.0) return cplx(0.0, 0.0);
    return cplx(0.0, x > 0.0 ? p.g : -p.g);
}

KappaDecomposition decompose_kappa(double E, double g) {
    const double r = std::hypot(E, g);
    const double t = std::sqrt(0.5 * (r + E));
    const double s = std::sqrt(std::max(0.5 * (r - E), 0.0));
    return {s, t, cplx(s, t)};
}

EnergyLevel make_level(int n, double E, double g) {
    if (!(E > 0.0)) throw std::domain_error("make_level: E > 0 expected in the unbroken regime");
    auto d = decompose_kappa(E, g);
    return EnergyLevel{n, E, std::sqrt(E), d.s, d.t, d.kappa};
}

} // namespace ptsusy
