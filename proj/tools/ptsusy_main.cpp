// Command-line front end: spectrum | factorize | partner | verify | gc-scan.
//
// Exit codes: 0 success, 1 invalid configuration, 2 PT breaking detected
// (coalescence), 3 verification failure.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptsusy/oracle.hpp"
#include "ptsusy/partner.hpp"
#include "ptsusy/potential.hpp"
#include "ptsusy/spectrum.hpp"
#include "ptsusy/susy.hpp"
#include "ptsusy/verify.hpp"
#include "ptsusy/version.hpp"

using json = nlohmann::ordered_json;
using namespace ptsusy;

namespace {

struct RunConfig {
    double L = 1.0;
    double l = 0.5;
    double g = 0.0;
    int n = 3;
    int grid_points = 1000;
    double tol = 1e-10;
    std::string format = "json";
    std::string out;
};

std::string fmt_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

json jcplx(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json provenance() { return json{{"tool", "ptsusy"}, {"version", ptsusy::version}}; }

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << content;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--L", cfg.L, "box half-width");
    cmd->add_option("--l", cfg.l, "well half-width");
    cmd->add_option("--g", cfg.g, "imaginary coupling strength");
    cmd->add_option("--n", cfg.n, "level count (or partner index for `partner`)");
    cmd->add_option("--grid", cfg.grid_points, "sample/oracle grid size")->check(CLI::Range(100, 100000000));
    cmd->add_option("--tol", cfg.tol, "solver tolerance");
    cmd->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", cfg.out, "output path (default stdout)");
    cmd->set_config("--config", "", "flat key=value configuration file");
}

// ---- spectrum ---------------------------------------------------------------

json spectrum_json(const SpectrumReport& rep, const RunConfig& cfg) {
    json levels = json::array();
    for (size_t i = 0; i < rep.levels.size(); ++i) {
        const auto& lv = rep.levels[i];
        levels.push_back(json{{"n", lv.n},
                              {"E", lv.E},
                              {"k", lv.k},
                              {"s", lv.s},
                              {"t", lv.t},
                              {"kappa", jcplx(lv.kappa)}});
    }
    return json{{"params",
                 {{"L", cfg.L}, {"l", cfg.l}, {"g", cfg.g}, {"n_levels", cfg.n}, {"tolerance", cfg.tol}}},
                {"results", {{"regime", "unbroken"}, {"levels", levels}}},
                {"residuals", {{"secular", rep.secular_residuals}}},
                {"provenance", provenance()}};
}

int cmd_spectrum(const RunConfig& cfg) {
    const auto p = make_problem(cfg.L, cfg.l, cfg.g);
    try {
        const auto rep = solve_spectrum(p, cfg.n, cfg.tol);
        if (cfg.format == "json") {
            write_output(cfg.out, dump(spectrum_json(rep, cfg)));
        } else {
            std::string s = "n,E,k,s,t,kappa_re,kappa_im,secular_residual\n";
            for (size_t i = 0; i < rep.levels.size(); ++i) {
                const auto& lv = rep.levels[i];
                s += std::to_string(lv.n) + "," + fmt_double(lv.E) + "," + fmt_double(lv.k) + "," +
                     fmt_double(lv.s) + "," + fmt_double(lv.t) + "," + fmt_double(lv.kappa.real()) +
                     "," + fmt_double(lv.kappa.imag()) + "," + fmt_double(rep.secular_residuals[i]) +
                     "\n";
            }
            write_output(cfg.out, s);
        }
        return 0;
    } catch (const coalescence_error& e) {
        if (cfg.format == "json") {
            json j{{"params",
                    {{"L", cfg.L}, {"l", cfg.l}, {"g", cfg.g}, {"n_levels", cfg.n}, {"tolerance", cfg.tol}}},
                   {"results", {{"regime", "broken-detected"}}},
                   {"error", e.what()},
                   {"provenance", provenance()}};
            write_output(cfg.out, dump(j));
        } else {
            write_output(cfg.out, std::string("regime,error\nbroken-detected,") + e.what() + "\n");
        }
        return 2;
    }
}

// ---- factorize --------------------------------------------------------------

int cmd_factorize(const RunConfig& cfg) {
    const auto p = make_problem(cfg.L, cfg.l, cfg.g);
    SpectrumReport rep;
    try {
        rep = solve_spectrum(p, 1, cfg.tol);
    } catch (const coalescence_error& e) {
        std::cerr << "factorize: " << e.what() << "\n";
        return 2;
    }
    const auto fac = make_factorization(p, rep.levels[0]);
    const auto jumps = potential_jumps(fac);

    const double margin = 1e-4 * p.L;
    std::vector<double> xs(cfg.grid_points);
    const double step = (2.0 * p.L - 2.0 * margin) / (cfg.grid_points - 1);
    for (int i = 0; i < cfg.grid_points; ++i) xs[i] = -p.L + margin + i * step;

    if (cfg.format == "json") {
        json samples = json::array();
        for (double x : xs) {
            const cplx w = superpotential(x, fac);
            const cplx vm = partner_potential(x, fac);
            const cplx vp = eval_vplus(x, p);
            samples.push_back(
                json{{"x", x}, {"W", jcplx(w)}, {"Vminus", jcplx(vm)}, {"Vplus", jcplx(vp)}});
        }
        json j{{"params", {{"L", cfg.L}, {"l", cfg.l}, {"g", cfg.g}, {"grid_points", cfg.grid_points}}},
               {"results",
                {{"D0", fac.D0},
                 {"x_R1", jcplx(fac.x_R1)},
                 {"x_L1", jcplx(fac.x_L1)},
                 {"x_L2", fac.x_L2},
                 {"x_R2", fac.x_R2},
                 {"jumps",
                  {{"minus_l", jcplx(jumps.at_minus_l)},
                   {"zero", jcplx(jumps.at_zero)},
                   {"plus_l", jcplx(jumps.at_plus_l)}}},
                 {"samples", samples}}},
               {"provenance", provenance()}};
        write_output(cfg.out, dump(j));
    } else {
        std::string s;
        s += "# D0 = " + fmt_double(fac.D0) + "\n";
        s += "# x_R1 = " + fmt_double(fac.x_R1.real()) + " " + fmt_double(fac.x_R1.imag()) + "\n";
        s += "# jumps = (" + fmt_double(jumps.at_minus_l.real()) + "," +
             fmt_double(jumps.at_minus_l.imag()) + ") (" + fmt_double(jumps.at_zero.real()) + "," +
             fmt_double(jumps.at_zero.imag()) + ") (" + fmt_double(jumps.at_plus_l.real()) + "," +
             fmt_double(jumps.at_plus_l.imag()) + ")\n";
        s += "x,W_re,W_im,Vminus_re,Vminus_im,Vplus_re,Vplus_im\n";
        for (double x : xs) {
            const cplx w = superpotential(x, fac);
            const cplx vm = partner_potential(x, fac);
            const cplx vp = eval_vplus(x, p);
            s += fmt_double(x) + "," + fmt_double(w.real()) + "," + fmt_double(w.imag()) + "," +
                 fmt_double(vm.real()) + "," + fmt_double(vm.imag()) + "," + fmt_double(vp.real()) +
                 "," + fmt_double(vp.imag()) + "\n";
        }
        write_output(cfg.out, s);
    }
    return 0;
}

// ---- partner ----------------------------------------------------------------

int cmd_partner(const RunConfig& cfg) {
    const auto p = make_problem(cfg.L, cfg.l, cfg.g);
    const int n = std::max(cfg.n, 0);
    SpectrumReport rep;
    try {
        rep = solve_spectrum(p, n + 2, cfg.tol);
    } catch (const coalescence_error& e) {
        std::cerr << "partner: " << e.what() << "\n";
        return 2;
    }
    try {
        const auto fac = make_factorization(p, rep.levels[0]);
        const auto ex = excited_state_plus(p, rep.levels[n + 1]);
        const auto pe = partner_eigenfunction(n, fac, ex);
        const auto match = check_matching(pe, fac);

        const double margin = 1e-4 * p.L;
        std::vector<double> xs(cfg.grid_points);
        const double step = (2.0 * p.L - 2.0 * margin) / (cfg.grid_points - 1);
        for (int i = 0; i < cfg.grid_points; ++i) xs[i] = -p.L + margin + i * step;
        const double sup = pe.psi.sup_norm(xs);

        if (cfg.format == "json") {
            json samples = json::array();
            for (double x : xs) samples.push_back(json{{"x", x}, {"psi", jcplx(pe.psi.value(x) / sup)}});
            json checks = json::array();
            for (const auto& c : match.checks)
                checks.push_back(json{{"name", c.name},
                                      {"residual", c.residual},
                                      {"threshold", c.threshold},
                                      {"pass", c.pass}});
            json j{{"params", {{"L", cfg.L}, {"l", cfg.l}, {"g", cfg.g}, {"n", n}}},
                   {"results",
                    {{"E_plus_level", pe.level.E},
                     {"E_minus_offset", pe.level.E - fac.D0},
                     {"Cminus", jcplx(pe.Cminus)},
                     {"samples", samples},
                     {"matching", checks}}},
                   {"provenance", provenance()}};
            write_output(cfg.out, dump(j));
        } else {
            std::string s;
            s += "# E_plus_level = " + fmt_double(pe.level.E) + "\n";
            s += "# E_minus_offset = " + fmt_double(pe.level.E - fac.D0) + "\n";
            s += "x,psi_re,psi_im\n";
            for (double x : xs) {
                const cplx v = pe.psi.value(x) / sup;
                s += fmt_double(x) + "," + fmt_double(v.real()) + "," + fmt_double(v.imag()) + "\n";
            }
            write_output(cfg.out, s);
        }
        return match.all_pass() ? 0 : 3;
    } catch (const matching_error& e) {
        std::cerr << "partner: " << e.what() << "\n";
        return 3;
    } catch (const continuity_error& e) {
        std::cerr << "partner: " << e.what() << "\n";
        return 3;
    }
}

// ---- verify -----------------------------------------------------------------

int cmd_verify(const RunConfig& cfg) {
    const auto p = make_problem(cfg.L, cfg.l, cfg.g);
    VerifyOptions vo;
    vo.n_partner = std::min(std::max(cfg.n - 1, 1), 4);
    vo.oracle_N = std::max(801, cfg.grid_points);
    vo.grid_points = cfg.grid_points;
    vo.tol = cfg.tol;
    VerificationReport rep;
    try {
        rep = run_verification(p, vo);
    } catch (const coalescence_error& e) {
        std::cerr << "verify: " << e.what() << "\n";
        return 2;
    }

    if (cfg.format == "json") {
        json checks = json::array();
        for (const auto& c : rep.checks)
            checks.push_back(json{
                {"name", c.name}, {"residual", c.residual}, {"threshold", c.threshold}, {"pass", c.pass}});
        json j{{"params", {{"L", cfg.L}, {"l", cfg.l}, {"g", cfg.g}}},
               {"results", {{"all_pass", rep.all_pass()}, {"checks", checks}}},
               {"provenance", provenance()}};
        write_output(cfg.out, dump(j));
    } else {
        std::string s = "name,residual,threshold,pass\n";
        for (const auto& c : rep.checks)
            s += c.name + "," + fmt_double(c.residual) + "," + fmt_double(c.threshold) + "," +
                 (c.pass ? "1" : "0") + "\n";
        write_output(cfg.out, s);
    }
    return rep.all_pass() ? 0 : 3;
}

// ---- gc-scan ----------------------------------------------------------------

int cmd_gc_scan(double L, const std::vector<double>& ls, double g_hi, double tol,
                const std::string& format, const std::string& out) {
    struct Row {
        double l;
        std::optional<double> gc;
        std::string status;
    };
    std::vector<Row> rows;
    for (double l : ls) {
        try {
            make_problem(L, l, 0.0);
            rows.push_back({l, critical_coupling(L, l, g_hi, tol), "ok"});
        } catch (const std::runtime_error&) {
            rows.push_back({l, std::nullopt, "no-breaking-in-bracket"});
        }
    }
    if (format == "json") {
        json jr = json::array();
        for (const auto& r : rows) {
            json row{{"l", r.l}, {"status", r.status}};
            if (r.gc) row["g_c"] = *r.gc;
            jr.push_back(row);
        }
        json j{{"params", {{"L", L}, {"g_hi", g_hi}, {"tolerance", tol}}},
               {"results", {{"rows", jr}}},
               {"provenance", provenance()}};
        write_output(out, dump(j));
    } else {
        std::string s = "l,g_c,status\n";
        for (const auto& r : rows)
            s += fmt_double(r.l) + "," + (r.gc ? fmt_double(*r.gc) : "") + "," + r.status + "\n";
        write_output(out, s);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"PT-symmetric square-well SUSY partner solver"};
    app.require_subcommand(1);

    RunConfig c_spec, c_fac, c_part, c_ver;
    auto* sub_spec = app.add_subcommand("spectrum", "solve the H(+) spectrum");
    add_common(sub_spec, c_spec);
    auto* sub_fac = app.add_subcommand("factorize", "superpotential, partner potential, jumps");
    add_common(sub_fac, c_fac);
    auto* sub_part = app.add_subcommand("partner", "partner eigenfunction samples (--n = index)");
    add_common(sub_part, c_part);
    c_part.n = 0;
    auto* sub_ver = app.add_subcommand("verify", "run the full identity battery");
    add_common(sub_ver, c_ver);

    double gs_L = 1.0, gs_ghi = 30.0, gs_tol = 1e-6;
    std::vector<double> gs_ls;
    std::string gs_format = "csv", gs_out;
    auto* sub_gc = app.add_subcommand("gc-scan", "critical coupling g_c over a list of l");
    sub_gc->add_option("--L", gs_L, "box half-width");
    sub_gc->add_option("--l", gs_ls, "comma-separated well half-widths")
        ->required()
        ->delimiter(',');
    sub_gc->add_option("--g-hi", gs_ghi, "bracket top for the bisection");
    sub_gc->add_option("--tol", gs_tol, "bisection width target");
    sub_gc->add_option("--format", gs_format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub_gc->add_option("--out", gs_out, "output path (default stdout)");
    sub_gc->set_config("--config", "", "flat key=value configuration file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (sub_spec->parsed()) return cmd_spectrum(c_spec);
        if (sub_fac->parsed()) return cmd_factorize(c_fac);
        if (sub_part->parsed()) return cmd_partner(c_part);
        if (sub_ver->parsed()) return cmd_verify(c_ver);
        if (sub_gc->parsed()) return cmd_gc_scan(gs_L, gs_ls, gs_ghi, gs_tol, gs_format, gs_out);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
