#include "ptsusy/verify.hpp"

#include <cmath>

#include "ptsusy/potential.hpp"

namespace ptsusy {

namespace {

double sup_abs(const std::vector<double>& grid, const std::function<cplx(double)>& f) {
    double m = 0.0;
    for (double x : grid) m = std::max(m, std::abs(f(x)));
    return m;
}

} // namespace

cplx plain_box_partner(double x, double L) {
    const double k = M_PI / (2.0 * L);
    const double sn = std::sin(k * (x + L));
    return cplx(2.0 * k * k / (sn * sn), 0.0);
}

cplx SingleWellPartner::operator()(double x) const {
    auto right = [&](double xr) {
        const cplx ch = std::cosh(kappa0 * (xr - x_r1));
        return -2.0 * kappa0 * kappa0 / (ch * ch) + cplx(0.0, g);
    };
    if (x > 0.0) return right(x);
    if (x < 0.0) return std::conj(right(-x));
    return 0.5 * (right(1e-300) + std::conj(right(1e-300)));
}

SingleWellPartner make_single_well_partner(double L, double g) {
    auto r = [&](double E) {
        const auto d = decompose_kappa(E, g);
        return (d.kappa * std::cosh(d.kappa * L) / std::sinh(d.kappa * L)).real();
    };
    const double Ebar = std::pow(M_PI / (2.0 * L), 2);
    double a = 0.2 * Ebar, b = a, fa = r(a);
    bool bracketed = false;
    for (int i = 0; i < 400; ++i) {
        b = a + 0.1 * Ebar;
        const double fb = r(b);
        if (fa * fb <= 0.0) {
            bracketed = true;
            break;
        }
        a = b;
        fa = fb;
    }
    if (!bracketed)
        throw std::runtime_error("make_single_well_partner: no real ground level (g too large?)");
    for (int i = 0; i < 200 && b - a > 1e-14 * std::max(1.0, b); ++i) {
        const double m = 0.5 * (a + b);
        if (fa * r(m) <= 0.0)
            b = m;
        else {
            a = m;
            fa = r(a);
        }
    }
    const double E0 = 0.5 * (a + b);
    const cplx kappa0 = decompose_kappa(E0, g).kappa;
    return SingleWellPartner{L, g, E0, kappa0, L - cplx(0.0, M_PI / 2.0) / kappa0};
}

VerificationReport run_verification(const ProblemParams& p, const VerifyOptions& opts) {
    VerificationReport rep;

    const int n_levels = opts.n_partner + 1;
    const auto spec = solve_spectrum(p, n_levels, opts.tol);
    double worst_secular = 0.0;
    for (double r : spec.secular_residuals) worst_secular = std::max(worst_secular, r);
    rep.add("secular_residuals", worst_secular, 1e-8);

    const auto gs = ground_state_plus(p, spec.levels[0]);
    const auto xr = solve_xr1(p, spec.levels[0]);
    const auto fac = [&] {
        Factorization f;
        f.params = p;
        f.level0 = spec.levels[0];
        f.D0 = spec.levels[0].E;
        f.x_L2 = p.L + M_PI / (2.0 * spec.levels[0].k);
        f.x_R2 = p.L - M_PI / (2.0 * spec.levels[0].k);
        f.x_R1 = xr.x_r1;
        f.x_L1 = std::conj(xr.x_r1);
        return f;
    }();

    rep.add("xr1_dual_solve_gap", xr.dual_gap, 1e-10);
    rep.add("xr1_tanh_residual", xr.tanh_residual, 1e-10);
    rep.add("xr1_system_residual", xr.system_residual, 1e-9);

    const auto grid = symmetric_grid(p, opts.grid_points, 1e-3 * p.L);
    const auto psi0 = wavefunction(gs);
    const double sup0 = psi0.sup_norm(grid);
    rep.add("zero_mode", zero_mode_residual(fac, gs, grid) / sup0, 1e-9);

    // Riccati checks with central-difference W'
    const double h = 1e-5;
    double rp = 0.0, rm = 0.0;
    for (double x : grid) {
        if (std::abs(x) > 0.85 * p.L) continue;
        if (std::min({std::abs(x - p.l), std::abs(x + p.l), std::abs(x)}) < 10.0 * h) continue;
        const cplx w = superpotential(x, fac);
        const cplx wp = (superpotential(x + h, fac) - superpotential(x - h, fac)) / (2.0 * h);
        rp = std::max(rp, std::abs(eval_vplus(x, p) - fac.D0 - (w * w - wp)));
        rm = std::max(rm, std::abs(partner_potential(x, fac) - fac.D0 - (w * w + wp)));
    }
    rep.add("riccati_vplus", rp, 1e-6);
    rep.add("riccati_vminus", rm, 1e-6);

    double w_anti = 0.0, v_sym = 0.0;
    for (double x : grid) {
        w_anti = std::max(w_anti, std::abs(superpotential(x, fac) + std::conj(superpotential(-x, fac))));
        v_sym = std::max(v_sym,
                         std::abs(partner_potential(x, fac) - std::conj(partner_potential(-x, fac))));
    }
    rep.add("w_pt_antisymmetry", w_anti, 1e-10);
    rep.add("vminus_pt_symmetry", v_sym, 1e-10);

    {
        const std::pair<const char*, double> ifaces[3] = {{"-l", -p.l}, {"0", 0.0}, {"+l", p.l}};
        for (const auto& [tag, xi] : ifaces) {
            const double a = std::nextafter(xi, -p.L), b = std::nextafter(xi, p.L);
            const double gap = std::abs(superpotential(a, fac) - superpotential(b, fac));
            rep.add(std::string("w_continuity_at_") + tag, gap / std::max(1.0, fac.level0.k), 1e-8);
        }
    }

    const auto jm = potential_jumps(fac);
    const auto jp = vplus_jumps(p);
    const cplx ig(0.0, p.g);
    const double jscale = std::max(1.0, p.g);
    rep.add("jump_minus_l", std::abs(jm.at_minus_l - ig) / jscale, 1e-10);
    rep.add("jump_zero", std::abs(jm.at_zero + 2.0 * ig) / jscale, 1e-10);
    rep.add("jump_plus_l", std::abs(jm.at_plus_l - ig) / jscale, 1e-10);
    rep.add("jump_algebra",
            std::max({std::abs(jm.at_minus_l + jp.at_minus_l), std::abs(jm.at_zero + jp.at_zero),
                      std::abs(jm.at_plus_l + jp.at_plus_l)}) /
                jscale,
            1e-12);

    // partner eigenfunctions
    const Grid fine = make_grid(p.L, static_cast<int>(std::lround(2.0 * p.L / 1e-4)) - 1);
    for (int n = 0; n < opts.n_partner; ++n) {
        const auto ex = excited_state_plus(p, spec.levels[n + 1]);
        const auto pe = partner_eigenfunction(n, fac, ex);
        for (const auto& c : check_matching(pe, fac).checks)
            rep.add("partner" + std::to_string(n) + "_" + c.name, c.residual, c.threshold);

        const double ode = ode_residual([&](double x) { return pe.psi.value(x); },
                                        pe.level.E - fac.D0,
                                        [&](double x) { return partner_potential(x, fac) - fac.D0; },
                                        fine, {-p.l, 0.0, p.l}, 500.0);
        rep.add("partner" + std::to_string(n) + "_ode_residual", ode, 1e-5);
    }

    // the intertwiner annihilates the ground state and nothing else
    rep.add("zero_mode_annihilated",
            sup_abs(grid, [&](double x) { return apply_annihilation(fac, psi0, x); }) / sup0, 1e-9);

    // oracle isospectrality of the factorized pair
    {
        OracleOptions oo;
        oo.dense_threshold = 600; // keep the battery on the fast structured path
        const auto iso = fd_spectrum_extrapolated(
            [&](double x) { return partner_potential(x, fac) - fac.D0; }, p, opts.oracle_N, 3, oo);
        double worst_rel = 0.0;
        for (int i = 0; i < 3 && i + 1 < static_cast<int>(spec.levels.size()); ++i) {
            const double expect = spec.levels[i + 1].E - spec.levels[0].E;
            worst_rel = std::max(worst_rel, std::abs(iso.eigenvalues[i].real() - expect) / expect);
        }
        rep.add("oracle_isospectrality", worst_rel, 1e-4);
    }

    // limit-regime profile comparisons
    if (p.l <= 1e-3 * p.L) {
        double worst = 0.0;
        const double inner = std::max(10.0 * p.l, 1e-4 * p.L);
        for (double x : grid) {
            if (std::abs(x) < inner || std::abs(x) > 0.99 * p.L) continue;
            worst = std::max(worst, std::abs(partner_potential(x, fac) - plain_box_partner(x, p.L)));
        }
        rep.add("limit_l0_partner_profile", worst, 1e-4);
    }
    if (p.l >= (1.0 - 1e-3) * p.L) {
        const auto sw = make_single_well_partner(p.L, p.g);
        double worst = 0.0;
        for (double x : grid) {
            if (std::abs(x) > 0.99 * p.L) continue;
            worst = std::max(worst, std::abs(partner_potential(x, fac) - sw(x)));
        }
        rep.add("limit_lL_partner_profile", worst, 1e-4);
    }

    return rep;
}

} // namespace ptsusy
