#include "ptsusy/susy.hpp"

#include <cmath>

#include "ptsusy/potential.hpp"
#include "ptsusy/spectrum.hpp"

namespace ptsusy {

namespace {

constexpr double realness_tol = 1e-9;
constexpr double continuity_tol = 1e-8;

cplx cot_c(cplx z) { return std::cos(z) / std::sin(z); }
double cot_r(double z) { return std::cos(z) / std::sin(z); }
cplx coth_c(cplx z) { return std::cosh(z) / std::sinh(z); }

// tanh(kappa_0 x_R1) target, i.e. the right side of the x_R1 condition
// (k cot[k(L-l)] coth(kappa l) + kappa) / (k cot[k(L-l)] + kappa coth(kappa l)).
cplx tanh_target(const ProblemParams& p, const EnergyLevel& lv) {
    const double P = lv.k * cot_r(lv.k * (p.L - p.l));
    const cplx ckl = coth_c(lv.kappa * p.l);
    return (P * ckl + lv.kappa) / (P + lv.kappa * ckl);
}

struct RegionValues {
    cplx v, d; // psi, psi' one-sided at the evaluation point
};

RegionValues eval_r1(const GroundStatePlus& st, double x) {
    const cplx kp = st.level.kappa;
    const cplx coeff = cplx(0.0, st.C) / (kp * st.params.l);
    return {st.B * std::cosh(kp * x) + coeff * std::sinh(kp * x),
            st.B * kp * std::sinh(kp * x) + cplx(0.0, st.C / st.params.l) * std::cosh(kp * x)};
}

RegionValues eval_r2(const GroundStatePlus& st, double x) {
    const double k = st.level.k;
    return {st.A * std::sin(k * (st.params.L - x)), -st.A * k * std::cos(k * (st.params.L - x))};
}

// Relative interface residual at x = l; this is the template's only
// nontrivial matching (x = 0 and x = -l are exact by construction).
double interface_residual(const GroundStatePlus& st) {
    const auto r1 = eval_r1(st, st.params.l);
    const auto r2 = eval_r2(st, st.params.l);
    const double k = std::max(st.level.k, 1.0);
    const double scale = std::max({std::abs(r1.v), std::abs(r2.v), std::abs(r1.d) / k,
                                   std::abs(r2.d) / k, 1e-30});
    return std::max(std::abs(r1.v - r2.v), std::abs(r1.d - r2.d) / k) / scale;
}

} // namespace

GroundStatePlus state_constants(const ProblemParams& p, const EnergyLevel& lv) {
    const double delta = p.L - p.l;
    const double k = lv.k;
    const cplx kp = lv.kappa;

    // Null vector of the matching system at x = l, written without the
    // csc/csch/cot factors so it stays finite at the parity-degenerate
    // Hermitian edges:
    //   alpha = k cos(k d) cosh(kappa l) + kappa sin(k d) sinh(kappa l)
    //   beta  = k cos(k d) sinh(kappa l) + kappa sin(k d) cosh(kappa l)
    //   (B, C) prop (-beta, -i kappa l alpha);  tanh(kappa x_R1) = alpha/beta.
    const cplx kc = k * std::cos(k * delta);
    const cplx ks = lv.kappa * std::sin(k * delta);
    const cplx ch = std::cosh(kp * p.l), sh = std::sinh(kp * p.l);
    const cplx alpha = kc * ch + ks * sh;
    const cplx beta = kc * sh + ks * ch;

    const cplx u = -beta;                          // B direction
    const cplx w = -cplx(0.0, 1.0) * kp * p.l * alpha; // C direction
    const double mu = std::max(std::abs(u), std::abs(w));
    if (mu == 0.0) throw matching_error("state_constants: degenerate matching system");

    // rotate the dominant component onto the real axis; on-shell the PT
    // structure makes the other one real too (that is the quantization
    // condition), so its leftover phase is the realness residual
    const cplx sigma = (std::abs(u) >= std::abs(w)) ? std::abs(u) / u : std::abs(w) / w;
    const cplx b_rot = sigma * u, c_rot = sigma * w;
    const double realness = std::max(std::abs(b_rot.imag()), std::abs(c_rot.imag())) / mu;
    if (realness > realness_tol)
        throw matching_error("state_constants: realness assertion on C failed (not an eigenvalue?)");

    GroundStatePlus st;
    st.params = p;
    st.level = lv;
    if (std::abs(b_rot) >= 1e-6 * std::abs(c_rot)) {
        st.B = 1.0; // the paper's normalization
        st.C = c_rot.real() / b_rot.real();
    } else {
        // psi(0) ~ 0 (Hermitian odd-parity edge): C-normalized representation
        const double scale = lv.t * p.l / c_rot.real();
        st.B = b_rot.real() * scale;
        st.C = lv.t * p.l;
    }
    // A from the projection of the R1 boundary data onto the R2 form; exact
    // on-shell and well conditioned for every parameter combination
    {
        const auto r1 = eval_r1(st, p.l);
        st.A = r1.v * std::sin(k * delta) - r1.d * std::cos(k * delta) / k;
    }

    if (interface_residual(st) > continuity_tol)
        throw matching_error("state_constants: interface continuity failed (not an eigenvalue?)");
    return st;
}

GroundStatePlus ground_state_plus(const ProblemParams& p, const EnergyLevel& level0) {
    if (level0.n != 0) throw std::invalid_argument("ground_state_plus: level index must be 0");
    return state_constants(p, level0);
}

PiecewiseWavefunction wavefunction(const GroundStatePlus& st) {
    const ProblemParams p = st.params;
    const double k = st.level.k;
    const cplx kp = st.level.kappa;
    const cplx kq = std::conj(kp);
    const cplx A = st.A;
    const cplx Ac = std::conj(st.A);
    const double B = st.B, C = st.C, l = p.l, L = p.L;

    PiecewiseWavefunction wf;
    wf.params = p;
    wf.region_value[0] = [=](double x) { return Ac * std::sin(k * (L + x)); };
    wf.region_deriv[0] = [=](double x) { return Ac * k * std::cos(k * (L + x)); };
    wf.region_value[1] = [=](double x) {
        return B * std::cosh(kq * x) + cplx(0.0, C) / (kq * l) * std::sinh(kq * x);
    };
    wf.region_deriv[1] = [=](double x) {
        return B * kq * std::sinh(kq * x) + cplx(0.0, C / l) * std::cosh(kq * x);
    };
    wf.region_value[2] = [=](double x) {
        return B * std::cosh(kp * x) + cplx(0.0, C) / (kp * l) * std::sinh(kp * x);
    };
    wf.region_deriv[2] = [=](double x) {
        return B * kp * std::sinh(kp * x) + cplx(0.0, C / l) * std::cosh(kp * x);
    };
    wf.region_value[3] = [=](double x) { return A * std::sin(k * (L - x)); };
    wf.region_deriv[3] = [=](double x) { return -A * k * std::cos(k * (L - x)); };
    return wf;
}

// ---- x_R1 ------------------------------------------------------------------

double XR1System::residual_real() const {
    const double M = std::pow(std::cosh(X) * std::cos(Y), 2) + std::pow(std::sinh(X) * std::sin(Y), 2);
    return std::sinh(X) * std::cosh(X) / M - Nr / D;
}

double XR1System::residual_imag() const {
    const double M = std::pow(std::cosh(X) * std::cos(Y), 2) + std::pow(std::sinh(X) * std::sin(Y), 2);
    return std::sin(Y) * std::cos(Y) / M - Ni / D;
}

XR1System make_xr1_system(const ProblemParams& p, const EnergyLevel& lv, cplx x_r1) {
    const double s = lv.s, t = lv.t, k = lv.k, l = p.l;
    const double two_kd = 2.0 * k * (p.L - p.l);
    XR1System sys;
    sys.X = s * x_r1.real() - t * x_r1.imag();
    sys.Y = t * x_r1.real() + s * x_r1.imag();
    sys.Nr = (-s * s * std::cos(two_kd) + t * t) * std::sinh(2.0 * s * l) +
             k * s * std::sin(two_kd) * std::cosh(2.0 * s * l);
    sys.Ni = (s * s - t * t * std::cos(two_kd)) * std::sin(2.0 * t * l) -
             k * t * std::sin(two_kd) * std::cos(2.0 * t * l);
    sys.D = (-s * s * std::cos(two_kd) + t * t) * std::cosh(2.0 * s * l) +
            (s * s - t * t * std::cos(two_kd)) * std::cos(2.0 * t * l) +
            k * std::sin(two_kd) * (s * std::sinh(2.0 * s * l) + t * std::sin(2.0 * t * l));
    return sys;
}

namespace {

cplx nearest_branch(cplx principal, cplx kappa, cplx prev) {
    cplx best = principal;
    double best_d = std::abs(principal - prev);
    for (int m = -4; m <= 4; ++m) {
        const cplx cand = principal + cplx(0.0, M_PI * m) / kappa;
        const double d = std::abs(cand - prev);
        if (d < best_d) {
            best_d = d;
            best = cand;
        }
    }
    return best;
}

// Damped Newton on the real system in (x_r1^r, x_r1^i), using the compact
// tanh(X+iY) = (sinh 2X + i sin 2Y)/(cosh 2X + cos 2Y) identity for the
// Jacobian of the left sides.
cplx newton_xr1(const ProblemParams& p, const EnergyLevel& lv, cplx seed) {
    const XR1System tgt = make_xr1_system(p, lv, seed); // Nr, Ni, D fixed; X, Y recomputed below
    const double s = lv.s, t = lv.t;
    const double ar = tgt.Nr / tgt.D, ai = tgt.Ni / tgt.D;

    double xr = seed.real(), xi = seed.imag();
    // sinh X cosh X / M == sinh 2X / (cosh 2X + cos 2Y), same for the sin ratio
    auto eval = [&](double vr, double vi, double& f1, double& f2) {
        const double X = s * vr - t * vi, Y = t * vr + s * vi;
        const double w = std::cosh(2 * X) + std::cos(2 * Y);
        f1 = std::sinh(2 * X) / w - ar;
        f2 = std::sin(2 * Y) / w - ai;
    };

    double f1, f2;
    eval(xr, xi, f1, f2);
    for (int it = 0; it < 80; ++it) {
        const double X = s * xr - t * xi, Y = t * xr + s * xi;
        const double u = std::sinh(2 * X), v = std::sin(2 * Y);
        const double w = std::cosh(2 * X) + std::cos(2 * Y);
        const double g1X = (2.0 * std::cosh(2 * X) * w - 2.0 * u * u) / (w * w);
        const double g1Y = 2.0 * u * v / (w * w);
        const double g2X = -2.0 * v * u / (w * w);
        const double g2Y = (2.0 * std::cos(2 * Y) * w + 2.0 * v * v) / (w * w);
        // chain rule through (X, Y)
        const double j11 = g1X * s + g1Y * t, j12 = -g1X * t + g1Y * s;
        const double j21 = g2X * s + g2Y * t, j22 = -g2X * t + g2Y * s;
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0) break;
        const double dr = -(j22 * f1 - j12 * f2) / det;
        const double di = -(-j21 * f1 + j11 * f2) / det;
        double lambda = 1.0;
        const double n0 = f1 * f1 + f2 * f2;
        double n1_f1, n1_f2;
        for (int halvings = 0; halvings < 25; ++halvings) {
            eval(xr + lambda * dr, xi + lambda * di, n1_f1, n1_f2);
            if (n1_f1 * n1_f1 + n1_f2 * n1_f2 < n0) break;
            lambda *= 0.5;
        }
        xr += lambda * dr;
        xi += lambda * di;
        f1 = n1_f1;
        f2 = n1_f2;
        if (std::abs(f1) < 1e-15 && std::abs(f2) < 1e-15) break;
    }
    return cplx(xr, xi);
}

} // namespace

XR1Result solve_xr1(const ProblemParams& p, const EnergyLevel& level0) {
    // branch tracking: follow the principal atanh from g = 0 in small steps,
    // selecting the nearest iπ/kappa translate at each step
    const int steps = std::max(8, static_cast<int>(std::ceil(p.g / 0.25)));
    cplx prev;
    {
        const ProblemParams p0{p.L, p.l, 0.0};
        const auto lv0 = solve_spectrum(p0, 1).levels[0];
        prev = std::atanh(tanh_target(p0, lv0)) / lv0.kappa;
    }
    for (int i = 1; i <= steps; ++i) {
        const ProblemParams pi{p.L, p.l, p.g * i / steps};
        const auto lvi = (i == steps) ? level0 : solve_spectrum(pi, 1).levels[0];
        const cplx principal = std::atanh(tanh_target(pi, lvi)) / lvi.kappa;
        prev = nearest_branch(principal, lvi.kappa, prev);
    }

    XR1Result res;
    res.x_r1_tracked = prev;
    res.x_r1 = newton_xr1(p, level0, prev);
    res.dual_gap = std::abs(res.x_r1 - res.x_r1_tracked);
    if (res.dual_gap > 1e-8)
        throw branch_error("solve_xr1: branch mismatch between closed form and Newton solve");
    res.tanh_residual = std::abs(std::tanh(level0.kappa * res.x_r1) - tanh_target(p, level0));
    const auto sys = make_xr1_system(p, level0, res.x_r1);
    res.system_residual = std::max(std::abs(sys.residual_real()), std::abs(sys.residual_imag()));
    return res;
}

Factorization make_factorization(const ProblemParams& p, const EnergyLevel& level0) {
    if (level0.n != 0) throw std::invalid_argument("make_factorization: level index must be 0");
    Factorization fac;
    fac.params = p;
    fac.level0 = level0;
    fac.D0 = level0.E;
    fac.x_L2 = p.L + M_PI / (2.0 * level0.k);
    fac.x_R2 = p.L - M_PI / (2.0 * level0.k);
    fac.x_R1 = solve_xr1(p, level0).x_r1;
    fac.x_L1 = std::conj(fac.x_R1);
    return fac;
}

// ---- W, V^(-), jumps -------------------------------------------------------

namespace {

void check_open_interval(double x, const Factorization& fac, const char* who) {
    if (std::abs(x) >= fac.params.L)
        throw std::domain_error(std::string(who) + ": |x| >= L (blows up at the walls)");
}

cplx w_l2(double x, const Factorization& f) {
    return cplx(-f.level0.k * cot_r(f.level0.k * (x + f.params.L)), 0.0);
}
cplx w_r2(double x, const Factorization& f) {
    return cplx(-f.level0.k * cot_r(f.level0.k * (x - f.params.L)), 0.0);
}
cplx w_l1(double x, const Factorization& f) {
    const cplx kq = std::conj(f.level0.kappa);
    return -kq * std::tanh(kq * (x + f.x_L1));
}
cplx w_r1(double x, const Factorization& f) {
    return -f.level0.kappa * std::tanh(f.level0.kappa * (x - f.x_R1));
}

cplx vm_l2(double x, const Factorization& f) {
    const double sn = std::sin(f.level0.k * (x + f.params.L));
    return cplx(2.0 * f.level0.E / (sn * sn), 0.0);
}
cplx vm_r2(double x, const Factorization& f) {
    const double sn = std::sin(f.level0.k * (x - f.params.L));
    return cplx(2.0 * f.level0.E / (sn * sn), 0.0);
}
cplx vm_l1(double x, const Factorization& f) {
    const cplx kq = std::conj(f.level0.kappa);
    const cplx ch = std::cosh(kq * (x + f.x_L1));
    return -2.0 * kq * kq / (ch * ch) - cplx(0.0, f.params.g);
}
cplx vm_r1(double x, const Factorization& f) {
    const cplx kp = f.level0.kappa;
    const cplx ch = std::cosh(kp * (x - f.x_R1));
    return -2.0 * kp * kp / (ch * ch) + cplx(0.0, f.params.g);
}

} // namespace

cplx superpotential(double x, const Factorization& fac) {
    check_open_interval(x, fac, "superpotential");
    switch (region_of(fac.params, x)) {
        case RegionTag::L2: return w_l2(x, fac);
        case RegionTag::L1: return w_l1(x, fac);
        case RegionTag::R1: return w_r1(x, fac);
        case RegionTag::R2: return w_r2(x, fac);
    }
    return {};
}

cplx superpotential_derivative(double x, const Factorization& fac) {
    check_open_interval(x, fac, "superpotential_derivative");
    const double k = fac.level0.k, E = fac.level0.E;
    switch (region_of(fac.params, x)) {
        case RegionTag::L2: {
            const double sn = std::sin(k * (x + fac.params.L));
            return cplx(E / (sn * sn), 0.0);
        }
        case RegionTag::R2: {
            const double sn = std::sin(k * (x - fac.params.L));
            return cplx(E / (sn * sn), 0.0);
        }
        case RegionTag::L1: {
            const cplx kq = std::conj(fac.level0.kappa);
            const cplx ch = std::cosh(kq * (x + fac.x_L1));
            return -kq * kq / (ch * ch);
        }
        case RegionTag::R1: {
            const cplx kp = fac.level0.kappa;
            const cplx ch = std::cosh(kp * (x - fac.x_R1));
            return -kp * kp / (ch * ch);
        }
    }
    return {};
}

cplx partner_potential(double x, const Factorization& fac) {
    check_open_interval(x, fac, "partner_potential");
    if (x == 0.0) return 0.5 * (vm_l1(0.0, fac) + vm_r1(0.0, fac));
    switch (region_of(fac.params, x)) {
        case RegionTag::L2: return vm_l2(x, fac);
        case RegionTag::L1: return vm_l1(x, fac);
        case RegionTag::R1: return vm_r1(x, fac);
        case RegionTag::R2: return vm_r2(x, fac);
    }
    return {};
}

PotentialJumps potential_jumps(const Factorization& fac) {
    const double l = fac.params.l;
    return {vm_l1(-l, fac) - vm_l2(-l, fac), vm_r1(0.0, fac) - vm_l1(0.0, fac),
            vm_r2(l, fac) - vm_r1(l, fac)};
}

PotentialJumps vplus_jumps(const ProblemParams& p) {
    const cplx ig(0.0, p.g);
    return {-ig, 2.0 * ig, -ig};
}

cplx apply_annihilation(const Factorization& fac, const PiecewiseWavefunction& wf, double x) {
    return wf.deriv(x) + superpotential(x, fac) * wf.value(x);
}

double zero_mode_residual(const Factorization& fac, const GroundStatePlus& gs,
                          std::span<const double> grid) {
    const auto wf = wavefunction(gs);
    double worst = 0.0;
    for (double x : grid) worst = std::max(worst, std::abs(apply_annihilation(fac, wf, x)));
    return worst;
}

} // namespace ptsusy
