#include "ptsusy/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ptsusy/potential.hpp"

namespace ptsusy {

namespace {

// sinh(w d)/w as an entire function of c = w^2.
cplx sinhc(cplx c, double d) {
    const cplx w = std::sqrt(c);
    const cplx z = w * d;
    if (std::abs(z) < 1e-8) {
        const cplx z2 = z * z;
        return d * (1.0 + z2 / 6.0 + z2 * z2 / 120.0);
    }
    return std::sinh(z) / w;
}

PropagatorStep make_step(RegionTag tag, cplx c, cplx wavenumber, double d) {
    const cplx ch = std::cosh(std::sqrt(c) * d);
    const cplx sc = sinhc(c, d);
    return PropagatorStep{tag, wavenumber, {ch, sc, c * sc, ch}};
}

struct Vec2 {
    cplx a, b;
};

Vec2 apply(const PropagatorStep& m, Vec2 v) {
    return {m.matrix[0] * v.a + m.matrix[1] * v.b, m.matrix[2] * v.a + m.matrix[3] * v.b};
}

double base_scale(const ProblemParams& p) {
    const double q = M_PI / (2.0 * p.L);
    return q * q;
}

} // namespace

std::array<PropagatorStep, 4> propagators(cplx E, const ProblemParams& p) {
    const double d_out = p.L - p.l;
    const cplx ig(0.0, p.g);
    return {make_step(RegionTag::L2, -E, std::sqrt(E), d_out),
            make_step(RegionTag::L1, -ig - E, std::sqrt(-ig - E), p.l),
            make_step(RegionTag::R1, ig - E, std::sqrt(ig - E), p.l),
            make_step(RegionTag::R2, -E, std::sqrt(E), d_out)};
}

cplx secular_function(cplx E, const ProblemParams& p) {
    const auto steps = propagators(E, p);
    Vec2 v{0.0, 1.0};
    for (const auto& m : steps) v = apply(m, v);
    return v.a;
}

namespace detail {

namespace {

double f_re(double E, const ProblemParams& p) { return secular_function(cplx(E, 0.0), p).real(); }

// Brent root polish inside a sign-change bracket.
double brent(const ProblemParams& p, double a, double b, double fa, double fb) {
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < 200; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 1e-300;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double s = fb / fa, pp, q;
            if (a == c) {
                pp = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc, r = fb / fc;
                pp = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (pp > 0.0) q = -q;
            pp = std::abs(pp);
            if (2.0 * pp < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = pp / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f_re(b, p);
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return b;
}

// Recursive subdivision of a |f| dip that shows no sign change at the cell
// ends: near-coalescent root pairs hide there.
void refine_dip(const ProblemParams& p, double a, double fa, double b, double fb,
                std::vector<std::pair<double, double>>& brackets, int depth) {
    if (depth <= 0 || b - a < 1e-13) return;
    const double m = 0.5 * (a + b);
    const double fm = f_re(m, p);
    if (fa * fm < 0.0) {
        brackets.emplace_back(a, m);
        brackets.emplace_back(m, b); // fm*fb < 0 too when fa*fb > 0
        return;
    }
    if (fm * fb < 0.0) {
        brackets.emplace_back(m, b);
        return;
    }
    // keep the half with the smaller |f| at its midpoint-side sample
    if (std::abs(fm) < std::min(std::abs(fa), std::abs(fb))) {
        const size_t before = brackets.size();
        refine_dip(p, a, fa, m, fm, brackets, depth - 1);
        if (brackets.size() > before) return;
        refine_dip(p, m, fm, b, fb, brackets, depth - 1);
    } else if (std::abs(fa) < std::abs(fb)) {
        refine_dip(p, a, fa, m, fm, brackets, depth - 1);
    } else {
        refine_dip(p, m, fm, b, fb, brackets, depth - 1);
    }
}

} // namespace

std::vector<double> scan_real_roots(const ProblemParams& p, double e_cap) {
    const double dE = base_scale(p) / 8.0;
    std::vector<double> es, fs;
    for (double E = 0.0; E <= e_cap + dE; E += dE) {
        es.push_back(E);
        fs.push_back(f_re(E, p));
    }

    std::vector<std::pair<double, double>> brackets;
    for (size_t i = 0; i + 1 < es.size(); ++i)
        if (fs[i] * fs[i + 1] < 0.0) brackets.emplace_back(es[i], es[i + 1]);

    // modulus dips between same-sign samples: candidate near-double roots
    for (size_t i = 1; i + 1 < es.size(); ++i) {
        if (std::abs(fs[i]) < std::abs(fs[i - 1]) && std::abs(fs[i]) < std::abs(fs[i + 1]) &&
            fs[i - 1] * fs[i] > 0.0 && fs[i] * fs[i + 1] > 0.0) {
            std::vector<std::pair<double, double>> extra;
            refine_dip(p, es[i - 1], fs[i - 1], es[i + 1], fs[i + 1], extra, 48);
            brackets.insert(brackets.end(), extra.begin(), extra.end());
        }
    }

    std::vector<double> roots;
    roots.reserve(brackets.size());
    for (auto [a, b] : brackets) {
        const double r = brent(p, a, b, f_re(a, p), f_re(b, p));
        if (r <= e_cap) roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end());
    // merge duplicates from overlapping brackets (Brent converges to machine
    // precision, so genuine near-coalescent pairs stay apart)
    std::vector<double> out;
    for (double r : roots)
        if (out.empty() || r - out.back() > 1e-11 * std::max(1.0, r)) out.push_back(r);
    return out;
}

} // namespace detail

SpectrumReport solve_spectrum(const ProblemParams& p, int n_levels, double tol) {
    if (n_levels < 1) throw std::domain_error("solve_spectrum: n_levels >= 1 required");
    if (!(tol > 0.0)) throw std::domain_error("solve_spectrum: tol > 0 required");

    const double base = base_scale(p);
    const double gap = 1e-6 * base;
    double e_cap = base * (n_levels + 0.75) * (n_levels + 0.75);

    std::vector<double> roots = detail::scan_real_roots(p, e_cap);
    // window may clip upward-shifted levels; extend twice before concluding
    for (int ext = 0; ext < 2 && static_cast<int>(roots.size()) < n_levels; ++ext) {
        e_cap += base * (2 * n_levels + 3);
        roots = detail::scan_real_roots(p, e_cap);
    }

    for (size_t i = 0; i + 1 < roots.size(); ++i)
        if (roots[i + 1] - roots[i] < gap)
            throw coalescence_error("coalescence detected: adjacent roots closer than gap");
    // Real roots obey E >= (pi/2L)^2 and the ground level stays below the
    // first excited Hermitian level right up to the merge point, so an empty
    // window below (pi/L)^2 means the lowest pair has left the real axis.
    const double ground_window = 4.0 * base * (1.0 + 1e-9);
    if (roots.empty() || roots.front() > ground_window)
        throw coalescence_error("coalescence detected: no real root in the ground window");
    if (static_cast<int>(roots.size()) < n_levels)
        throw coalescence_error("coalescence detected: real-root count dropped below request");

    SpectrumReport rep;
    rep.params = p;
    rep.regime = Regime::unbroken;
    for (int n = 0; n < n_levels; ++n) {
        rep.levels.push_back(make_level(n, roots[n], p.g));
        rep.secular_residuals.push_back(std::abs(secular_function(cplx(roots[n], 0.0), p)));
    }
    return rep;
}

double critical_coupling(double L, double l, double g_hi, double tol) {
    if (!(tol > 0.0)) throw std::domain_error("critical_coupling: tol > 0 required");
    const ProblemParams probe = make_problem(L, l, 0.0);
    const double base = base_scale(probe);
    const double e_cap = 6.25 * base; // between the 2nd and 3rd Hermitian levels
    const double gap = 1e-6 * base;

    auto lowest_pair_distinct = [&](double g) {
        const ProblemParams q{L, l, g};
        const auto roots = detail::scan_real_roots(q, e_cap);
        return roots.size() >= 2 && roots[1] - roots[0] > gap;
    };

    if (lowest_pair_distinct(g_hi))
        throw std::runtime_error("critical_coupling: g_hi below breaking");

    double lo = 0.0, hi = g_hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (lowest_pair_distinct(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace ptsusy
