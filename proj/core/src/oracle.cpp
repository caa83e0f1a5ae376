#include "ptsusy/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <lapacke.h>

namespace ptsusy {

namespace {

// Gauss-Legendre 8-point rule on [-1, 1].
constexpr double gl_x[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                            -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                            0.7966664774136267,  0.9602898564975363};
constexpr double gl_w[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                            0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                            0.2223810344533745, 0.1012285362903763};

cplx gauss_segment(const PotentialSampler& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx acc = 0.0;
    for (int i = 0; i < 8; ++i) acc += gl_w[i] * f(mid + half * gl_x[i]);
    return acc * half;
}

struct Tridiag {
    std::vector<cplx> d; // diagonal
    double e = 0.0;      // constant off-diagonal -1/h^2
    double norm_est = 0.0;
};

Tridiag build_matrix(const PotentialSampler& pot, const ProblemParams& p, const Grid& g) {
    Tridiag T;
    T.d.resize(g.N);
    T.e = -1.0 / (g.h * g.h);
    const double diag_kin = 2.0 / (g.h * g.h);
    for (int j = 1; j <= g.N; ++j) {
        const cplx v = pot(g.node(j));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::runtime_error("non-finite potential sample");
        T.d[j - 1] = diag_kin + v;
    }
    // cell averaging across the known jumps restores O(h^2); a cell may
    // contain several interface points when l is tiny, so split at all of them
    const double jumps[3] = {-p.l, 0.0, p.l};
    for (int j = 1; j <= g.N; ++j) {
        const double a = g.node(j) - 0.5 * g.h, b = g.node(j) + 0.5 * g.h;
        std::vector<double> cuts;
        for (double c : jumps)
            if (a < c && c < b) cuts.push_back(c);
        if (cuts.empty()) continue;
        std::sort(cuts.begin(), cuts.end());
        cplx acc = 0.0;
        double lo = a;
        for (double c : cuts) {
            acc += gauss_segment(pot, lo, c);
            lo = c;
        }
        acc += gauss_segment(pot, lo, b);
        T.d[j - 1] = diag_kin + acc / g.h;
    }
    double m = 0.0;
    for (const cplx& z : T.d) m = std::max(m, std::abs(z));
    T.norm_est = m + 2.0 * std::abs(T.e);
    return T;
}

// ---- dense path -------------------------------------------------------------

std::vector<cplx> dense_eigenvalues(const Tridiag& T) {
    const int N = static_cast<int>(T.d.size());
    std::vector<cplx> A(static_cast<size_t>(N) * N, cplx(0.0, 0.0));
    for (int j = 0; j < N; ++j) {
        A[static_cast<size_t>(j) * N + j] = T.d[j];
        if (j + 1 < N) {
            A[static_cast<size_t>(j) * N + j + 1] = T.e;
            A[static_cast<size_t>(j + 1) * N + j] = T.e;
        }
    }
    std::vector<cplx> w(N);
    const int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', N,
                                   reinterpret_cast<lapack_complex_double*>(A.data()), N,
                                   reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1,
                                   nullptr, 1);
    if (info != 0) throw std::runtime_error("fd_spectrum: zgeev failed, info=" + std::to_string(info));
    std::sort(w.begin(), w.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return w;
}

// ---- structured path --------------------------------------------------------

// LU solve of (T - sigma) x = b with partial pivoting (tridiagonal,
// fill-in limited to a second superdiagonal).
void shifted_solve(const Tridiag& T, cplx sigma, std::vector<cplx>& x, const std::vector<cplx>& b) {
    const int N = static_cast<int>(T.d.size());
    std::vector<cplx> dd(N), du(N > 1 ? N - 1 : 0), du2(N > 2 ? N - 2 : 0), dl(N > 1 ? N - 1 : 0);
    for (int i = 0; i < N; ++i) dd[i] = T.d[i] - sigma;
    for (int i = 0; i + 1 < N; ++i) {
        du[i] = T.e;
        dl[i] = T.e;
    }
    x = b;
    std::vector<lapack_int> ipiv(N);
    int info = LAPACKE_zgttrf(N, reinterpret_cast<lapack_complex_double*>(dl.data()),
                              reinterpret_cast<lapack_complex_double*>(dd.data()),
                              reinterpret_cast<lapack_complex_double*>(du.data()),
                              reinterpret_cast<lapack_complex_double*>(du2.data()), ipiv.data());
    if (info > 0) {
        // exactly singular shift: nudge and retry once
        for (int i = 0; i < N; ++i) dd[i] = T.d[i] - sigma * (1.0 + 1e-13) - cplx(1e-13, 0.0);
        for (int i = 0; i + 1 < N; ++i) {
            du[i] = T.e;
            dl[i] = T.e;
        }
        info = LAPACKE_zgttrf(N, reinterpret_cast<lapack_complex_double*>(dl.data()),
                              reinterpret_cast<lapack_complex_double*>(dd.data()),
                              reinterpret_cast<lapack_complex_double*>(du.data()),
                              reinterpret_cast<lapack_complex_double*>(du2.data()), ipiv.data());
    }
    if (info != 0) throw std::runtime_error("fd_spectrum: zgttrf failed");
    info = LAPACKE_zgttrs(LAPACK_COL_MAJOR, 'N', N, 1,
                          reinterpret_cast<lapack_complex_double*>(dl.data()),
                          reinterpret_cast<lapack_complex_double*>(dd.data()),
                          reinterpret_cast<lapack_complex_double*>(du.data()),
                          reinterpret_cast<lapack_complex_double*>(du2.data()), ipiv.data(),
                          reinterpret_cast<lapack_complex_double*>(x.data()), N);
    if (info != 0) throw std::runtime_error("fd_spectrum: zgttrs failed");
}

void apply(const Tridiag& T, const std::vector<cplx>& x, std::vector<cplx>& y) {
    const int N = static_cast<int>(x.size());
    y.resize(N);
    for (int i = 0; i < N; ++i) {
        cplx acc = T.d[i] * x[i];
        if (i > 0) acc += T.e * x[i - 1];
        if (i + 1 < N) acc += T.e * x[i + 1];
        y[i] = acc;
    }
}

double norm2(const std::vector<cplx>& x) {
    double s = 0.0;
    for (const cplx& z : x) s += std::norm(z);
    return std::sqrt(s);
}

cplx bilinear(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i]; // transpose, no conjugation
    return s;
}

struct RqiOut {
    cplx lambda;
    std::vector<cplx> vec;
    double residual;
    bool converged;
};

// Shift-inverted iteration with bilinear Rayleigh-quotient updates; the
// bilinear form is the natural one for complex-symmetric matrices.
RqiOut rqi(const Tridiag& T, cplx sigma0, int profile_j) {
    const int N = static_cast<int>(T.d.size());
    std::vector<cplx> x(N), y;
    for (int i = 1; i <= N; ++i)
        x[i - 1] = std::sin(profile_j * M_PI * i / double(N + 1)); // free-box profile
    {
        const double nx = norm2(x);
        for (auto& z : x) z /= nx;
    }
    cplx sigma = sigma0, lambda = sigma0;
    double resid = 1e300;
    for (int it = 0; it < 60; ++it) {
        shifted_solve(T, sigma, y, x);
        const double ny = norm2(y);
        for (auto& z : y) z /= ny;
        std::vector<cplx> Ty;
        apply(T, y, Ty);
        const cplx yy = bilinear(y, y);
        // near-defective pairs make the bilinear form quasi-null; keep the
        // previous shift there and let the residual gate decide
        const cplx lam_new = (std::abs(yy) > 1e-8) ? bilinear(y, Ty) / yy : sigma;
        double rn = 0.0;
        for (int i = 0; i < N; ++i) rn += std::norm(Ty[i] - lam_new * y[i]);
        rn = std::sqrt(rn);
        x.swap(y);
        const bool tight = std::abs(lam_new - lambda) <= 1e-14 * std::max(1.0, std::abs(lam_new));
        lambda = lam_new;
        sigma = lam_new;
        resid = rn;
        if (tight && rn < 1e-13 * T.norm_est) return {lambda, std::move(x), resid, true};
    }
    return {lambda, std::move(x), resid, resid < 1e-12 * T.norm_est};
}

// Fixed-shift inverse iteration for the eigenvector once the eigenvalue is
// known; the LCG start guarantees a nonzero component on the target.
std::vector<cplx> inverse_iteration_vector(const Tridiag& T, cplx lambda) {
    const int N = static_cast<int>(T.d.size());
    std::vector<cplx> x(N), y;
    uint64_t state = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < N; ++i) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        x[i] = cplx(double(state >> 11) / double(1ull << 53) - 0.5, 0.0);
    }
    for (int it = 0; it < 8; ++it) {
        shifted_solve(T, lambda, y, x);
        const double ny = norm2(y);
        for (auto& z : y) z /= ny;
        x.swap(y);
    }
    return x;
}

std::vector<cplx> structured_lowest(const Tridiag& T, const Grid& g, int m,
                                    std::vector<std::vector<cplx>>* vecs) {
    struct Root {
        cplx lambda;
        std::vector<cplx> vec;
    };
    std::vector<Root> found;
    auto known = [&](cplx z) {
        for (const auto& r : found)
            if (std::abs(z - r.lambda) < 1e-7 * std::max(1.0, std::abs(r.lambda))) return true;
        return false;
    };

    std::vector<std::pair<cplx, int>> seeds; // shift, sin-profile index
    for (int j = 1; j <= m + 2; ++j) {
        const double mu = (2.0 / (g.h * g.h)) * (1.0 - std::cos(j * M_PI / (g.N + 1)));
        seeds.push_back({cplx(mu, 0.0), j});
    }
    size_t cursor = 0;
    int extensions = 0;
    while (cursor < seeds.size()) {
        auto [sigma, prof] = seeds[cursor++];
        auto out = rqi(T, sigma, prof);
        if (out.converged && !known(out.lambda)) found.push_back({out.lambda, std::move(out.vec)});
        if (cursor == seeds.size() && static_cast<int>(found.size()) < m && extensions < 4) {
            ++extensions;
            std::sort(found.begin(), found.end(),
                      [](const Root& a, const Root& b) { return a.lambda.real() < b.lambda.real(); });
            for (size_t i = 0; i + 1 < found.size(); ++i)
                seeds.push_back({0.5 * (found[i].lambda + found[i + 1].lambda), int(i) + 1});
            if (!found.empty())
                seeds.push_back({found.back().lambda * 1.4 + 1.0, int(found.size()) + 1});
            else
                seeds.push_back({cplx(1.0, 0.0), 1});
        }
    }
    if (static_cast<int>(found.size()) < m)
        throw std::runtime_error("fd_spectrum: structured solver found too few eigenvalues");
    std::sort(found.begin(), found.end(), [](const Root& a, const Root& b) {
        return a.lambda.real() != b.lambda.real() ? a.lambda.real() < b.lambda.real()
                                                  : a.lambda.imag() < b.lambda.imag();
    });
    std::vector<cplx> vals;
    for (int i = 0; i < m; ++i) {
        vals.push_back(found[i].lambda);
        if (vecs) vecs->push_back(std::move(found[i].vec));
    }
    return vals;
}

// Deterministic eigenvector normalization: sup-norm 1, largest-|.| component
// rotated to the positive real axis.
void normalize_vector(std::vector<cplx>& v) {
    size_t imax = 0;
    double best = -1.0;
    for (size_t i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > best) {
            best = std::abs(v[i]);
            imax = i;
        }
    const cplx scale = std::abs(v[imax]) / v[imax] / std::abs(v[imax]);
    for (auto& z : v) z *= scale;
}

} // namespace

std::vector<double> Grid::nodes() const {
    std::vector<double> out(N);
    for (int j = 1; j <= N; ++j) out[j - 1] = node(j);
    return out;
}

Grid make_grid(double L, int N) { return Grid{N, 2.0 * L / (N + 1), L}; }

int adjust_interior_count(const ProblemParams& p, int N) {
    for (int n = N; n < N + 64; ++n) {
        const double h = 2.0 * p.L / (n + 1);
        bool clash = false;
        for (double c : {-p.l, 0.0, p.l}) {
            const double u = (c + p.L) / h;
            if (std::abs(u - std::round(u)) < 1e-9) clash = true;
        }
        if (!clash) return n;
    }
    return N;
}

OracleSpectrum fd_spectrum(const PotentialSampler& potential, const ProblemParams& p, int N,
                           int n_levels, const OracleOptions& opts) {
    if (N < 200) throw std::domain_error("fd_spectrum: N >= 200 required");
    if (n_levels < 1) throw std::domain_error("fd_spectrum: n_levels >= 1 required");

    const Grid g = make_grid(p.L, adjust_interior_count(p, N));
    const Tridiag T = build_matrix(potential, p, g);

    OracleSpectrum out;
    out.grid = g;
    if (g.N <= opts.dense_threshold) {
        auto w = dense_eigenvalues(T);
        out.eigenvalues.assign(w.begin(), w.begin() + std::min<size_t>(n_levels, w.size()));
    } else {
        out.eigenvalues = structured_lowest(T, g, n_levels, nullptr);
    }
    if (opts.want_vectors) {
        // inverse iteration at the converged eigenvalues works for both paths
        for (const cplx& lambda : out.eigenvalues) {
            auto v = inverse_iteration_vector(T, lambda);
            normalize_vector(v);
            out.eigenvectors.push_back(std::move(v));
        }
    }
    out.error_estimates.assign(out.eigenvalues.size(), g.h * g.h); // crude O(h^2) scale
    return out;
}

OracleSpectrum fd_spectrum_extrapolated(const PotentialSampler& potential, const ProblemParams& p,
                                        int N, int n_levels, const OracleOptions& opts) {
    OracleSpectrum coarse = fd_spectrum(potential, p, N, n_levels, opts);
    OracleSpectrum fine = fd_spectrum(potential, p, 2 * N, n_levels, opts);
    const double h1 = coarse.grid.h, h2 = fine.grid.h;
    OracleSpectrum out;
    out.grid = fine.grid;
    out.extrapolated = true;
    for (int i = 0; i < n_levels; ++i) {
        const cplx e = (fine.eigenvalues[i] * h1 * h1 - coarse.eigenvalues[i] * h2 * h2) /
                       (h1 * h1 - h2 * h2);
        out.eigenvalues.push_back(e);
        out.error_estimates.push_back(std::abs(e - fine.eigenvalues[i]));
    }
    out.eigenvectors = std::move(fine.eigenvectors);
    return out;
}

double ode_residual(const std::function<cplx(double)>& psi, double E,
                    const PotentialSampler& potential, const Grid& grid,
                    const std::vector<double>& special, double margin) {
    double sup = 0.0;
    std::vector<cplx> vals(grid.N);
    for (int j = 1; j <= grid.N; ++j) {
        vals[j - 1] = psi(grid.node(j));
        sup = std::max(sup, std::abs(vals[j - 1]));
    }
    if (sup == 0.0) return 0.0;

    const double keep = margin * grid.h;
    double worst = 0.0;
    for (int j = 2; j + 1 <= grid.N; ++j) {
        const double x = grid.node(j);
        if (grid.L - std::abs(x) < keep) continue;
        bool skip = false;
        for (double c : special)
            if (std::abs(x - c) < keep) skip = true;
        if (skip) continue;
        const cplx d2 = (vals[j] - 2.0 * vals[j - 1] + vals[j - 2]) / (grid.h * grid.h);
        const cplx r = -d2 + (potential(x) - E) * vals[j - 1];
        worst = std::max(worst, std::abs(r));
    }
    return worst / sup;
}

} // namespace ptsusy
