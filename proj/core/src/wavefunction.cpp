#include "ptsusy/wavefunction.hpp"

#include <algorithm>
#include <cmath>

#include "ptsusy/potential.hpp"

namespace ptsusy {

cplx PiecewiseWavefunction::value(double x) const {
    return region_value[static_cast<int>(region_of(params, x))](x);
}

cplx PiecewiseWavefunction::deriv(double x) const {
    return region_deriv[static_cast<int>(region_of(params, x))](x);
}

std::vector<ComplexSample> PiecewiseWavefunction::sample(std::span<const double> grid) const {
    std::vector<ComplexSample> out;
    out.reserve(grid.size());
    for (double x : grid) out.push_back({x, value(x)});
    return out;
}

double PiecewiseWavefunction::sup_norm(std::span<const double> grid) const {
    double m = 0.0;
    for (double x : grid) m = std::max(m, std::abs(value(x)));
    return m;
}

std::vector<double> symmetric_grid(const ProblemParams& p, int n, double margin) {
    const double a = p.L - margin;
    std::vector<double> g(n);
    const double step = 2.0 * a / (n - 1);
    const int half = n / 2;
    for (int i = 0; i < half; ++i) {
        const double x = a - i * step;
        g[n - 1 - i] = x;
        g[i] = -x;
    }
    if (n % 2 == 1) g[half] = 0.0;
    return g;
}

} // namespace ptsusy
