// Regenerates the oracle-derived golden data consumed by the test suite.
// Everything here goes through the finite-difference oracle only — never the
// transfer-matrix solver — so the goldens stay an independent reference.
//
//   ptsusy-golden-gen --out-dir tests/golden
//
// Writes golden_spectra.json (extrapolated FD eigenvalues for the canonical
// parameter sets) and golden_gc.json (critical couplings from bisection on
// the FD spectrum at two resolutions plus Richardson extrapolation on g_c).
// Takes a few minutes; the g_c bisections dominate.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptsusy/oracle.hpp"
#include "ptsusy/potential.hpp"
#include "ptsusy/version.hpp"

using json = nlohmann::ordered_json;
using namespace ptsusy;

namespace {

PotentialSampler vplus_sampler(const ProblemParams& p) {
    return [p](double x) { return eval_vplus(x, p); };
}

json jcplx(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

// "lowest two eigenvalues real and distinct" on the FD matrix at resolution N
bool fd_pair_distinct(const ProblemParams& p, int N) {
    OracleOptions oo;
    oo.dense_threshold = 1000000; // dense: robust near the exceptional point
    const auto sp = fd_spectrum(vplus_sampler(p), p, N, 2, oo);
    const cplx e0 = sp.eigenvalues[0], e1 = sp.eigenvalues[1];
    const double im_tol = 1e-6 * std::max(1.0, std::abs(e0.real()));
    return std::abs(e0.imag()) < im_tol && std::abs(e1.imag()) < im_tol &&
           (e1.real() - e0.real()) > 1e-6;
}

double fd_gc(double L, double l, double g_hi, int N, double tol) {
    const ProblemParams top{L, l, g_hi};
    if (fd_pair_distinct(top, N)) throw std::runtime_error("fd_gc: g_hi below breaking");
    double lo = 0.0, hi = g_hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (fd_pair_distinct(ProblemParams{L, l, mid}, N) ? lo : hi) = mid;
        std::fprintf(stderr, "  gc bisection N=%d: [%.8f, %.8f]\n", N, lo, hi);
    }
    return 0.5 * (lo + hi);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"regenerate oracle golden data"};
    std::string out_dir = "tests/golden";
    bool quick = false;
    app.add_option("--out-dir", out_dir, "directory for the golden files");
    app.add_flag("--quick", quick, "coarser resolutions (smoke use only)");
    CLI11_PARSE(app, argc, argv);

    const int n_spec = quick ? 1000 : 2000;

    json spectra = json::array();
    const double sets[3][3] = {{1.0, 0.5, 1.0}, {1.0, 0.5, 2.0}, {1.0, 0.25, 2.0}};
    for (const auto& s : sets) {
        const auto p = make_problem(s[0], s[1], s[2]);
        std::fprintf(stderr, "spectra: L=%g l=%g g=%g (N=%d/%d)\n", p.L, p.l, p.g, n_spec, 2 * n_spec);
        const auto sp = fd_spectrum_extrapolated(vplus_sampler(p), p, n_spec, 3);
        json evs = json::array(), errs = json::array();
        for (size_t i = 0; i < sp.eigenvalues.size(); ++i) {
            evs.push_back(jcplx(sp.eigenvalues[i]));
            errs.push_back(sp.error_estimates[i]);
        }
        spectra.push_back(json{{"L", p.L},
                               {"l", p.l},
                               {"g", p.g},
                               {"N_coarse", n_spec},
                               {"N_fine", 2 * n_spec},
                               {"extrapolated", true},
                               {"eigenvalues", evs},
                               {"error_estimates", errs}});
    }
    {
        json root{{"schema_version", 1},
                  {"generator", {{"tool", "ptsusy-golden-gen"}, {"version", ptsusy::version}}},
                  {"spectra", spectra}};
        std::ofstream f(out_dir + "/golden_spectra.json", std::ios::binary);
        f << root.dump(2) << "\n";
        std::fprintf(stderr, "wrote %s/golden_spectra.json\n", out_dir.c_str());
    }

    const int gc_n1 = quick ? 401 : 801;
    const int gc_n2 = quick ? 601 : 1201;
    json gcs = json::array();
    const double gc_sets[2][2] = {{1.0, 0.5}, {1.0, 1.0 - 1e-9}};
    for (const auto& s : gc_sets) {
        const double L = s[0], l = s[1];
        std::fprintf(stderr, "g_c: L=%g l=%.12g\n", L, l);
        const double g1 = fd_gc(L, l, 30.0, gc_n1, 1e-7);
        const double g2 = fd_gc(L, l, 30.0, gc_n2, 1e-7);
        const double h1 = 2.0 * L / (adjust_interior_count(ProblemParams{L, l, 0.0}, gc_n1) + 1);
        const double h2 = 2.0 * L / (adjust_interior_count(ProblemParams{L, l, 0.0}, gc_n2) + 1);
        const double gext = (g2 * h1 * h1 - g1 * h2 * h2) / (h1 * h1 - h2 * h2);
        std::fprintf(stderr, "  g_c(%d)=%.8f g_c(%d)=%.8f extrapolated=%.8f\n", gc_n1, g1, gc_n2, g2,
                     gext);
        gcs.push_back(json{{"L", L},
                           {"l", l},
                           {"g_c", gext},
                           {"g_c_coarse", g1},
                           {"g_c_fine", g2},
                           {"N_coarse", gc_n1},
                           {"N_fine", gc_n2},
                           {"method", "fd-bisection-richardson"}});
    }
    {
        json root{{"schema_version", 1},
                  {"generator", {{"tool", "ptsusy-golden-gen"}, {"version", ptsusy::version}}},
                  {"critical_couplings", gcs}};
        std::ofstream f(out_dir + "/golden_gc.json", std::ios::binary);
        f << root.dump(2) << "\n";
        std::fprintf(stderr, "wrote %s/golden_gc.json\n", out_dir.c_str());
    }
    return 0;
}
