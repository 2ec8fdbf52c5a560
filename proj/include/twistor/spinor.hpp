#pragma once

#include "twistor/calculus.hpp"
#include "twistor/coloring.hpp"
#include "twistor/graph.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace twistor {

// Per vertex of a 3-edge-colored cubic graph: xi_k = w(x -> y_k) along the
// colour-k edge. Null (sum of squares zero) whenever w is isotropic.
template <class C>
struct XiField {
    std::vector<std::array<C, 3>> xi;
};

namespace detail {

inline void require_colored_cubic(const Graph& g, const EdgeColoring& col) {
    if (!g.is_regular(3)) throw std::invalid_argument("graph is not cubic");
    if (col.num_colors != 3 || !is_proper_coloring(g, col))
        throw std::invalid_argument("need a proper 3-edge-coloring");
}

} // namespace detail

// colour_neighbor[x][k-1] = the unique neighbor of x along the colour-k edge
inline std::vector<std::array<int, 3>> colour_neighbors(const Graph& g, const EdgeColoring& col) {
    detail::require_colored_cubic(g, col);
    std::vector<std::array<int, 3>> nb(g.n(), {-1, -1, -1});
    for (int x = 0; x < g.n(); ++x)
        for (int y : g.neighbors(x)) {
            int e = g.edge_index(Edge(g.label(x), g.label(y)));
            nb[x][col.color[e] - 1] = y;
        }
    for (int x = 0; x < g.n(); ++x)
        for (int k = 0; k < 3; ++k)
            if (nb[x][k] < 0) throw std::invalid_argument("colour " + std::to_string(k + 1) +
                                                          " missing at vertex " + g.label(x));
    return nb;
}

template <class C>
XiField<C> xi_field(const Graph& g, const OneForm<C>& w, const EdgeColoring& col) {
    auto nb = colour_neighbors(g, col);
    XiField<C> f;
    f.xi.resize(g.n());
    for (int x = 0; x < g.n(); ++x)
        for (int k = 0; k < 3; ++k) f.xi[x][k] = form_value(g, w, x, nb[x][k]);
    return f;
}

// Symmetric matrix built from a null triple; rank one exactly when
// xi_1^2 + xi_2^2 + xi_3^2 = 0.
template <class C>
std::array<C, 4> omega_matrix(const std::array<C, 3>& xi) {
    C i = imaginary_unit(xi[0]);
    return {-xi[1] - xi[2] * i, xi[0], xi[0], xi[1] - xi[2] * i};
}

template <class C>
C omega_determinant(const std::array<C, 3>& xi) {
    auto o = omega_matrix(xi);
    return o[0] * o[3] - o[1] * o[2];
}

// Rank-one factorization Omega = mu mu^T. The pair is defined up to overall
// sign; we normalize so the larger-modulus component (index 0 on ties) has
// argument in [0, pi).
inline std::array<Complex, 2> spinor_from_xi(const std::array<Complex, 3>& xi) {
    if (xi[0] == Complex(0) && xi[1] == Complex(0) && xi[2] == Complex(0))
        throw std::domain_error("spinor undefined for xi = 0");
    Complex o00 = -xi[1] - xi[2] * Complex(0, 1);
    Complex o11 = xi[1] - xi[2] * Complex(0, 1);
    if (o00 == Complex(0) && o11 == Complex(0) && xi[0] != Complex(0))
        throw std::domain_error("xi triple is not null");
    Complex mu0, mu1;
    if (std::abs(o00) >= std::abs(o11)) {
        mu0 = std::sqrt(o00);
        mu1 = mu0 == Complex(0) ? std::sqrt(o11) : xi[0] / mu0;
    } else {
        mu1 = std::sqrt(o11);
        mu0 = xi[0] / mu1;
    }
    int lead = std::abs(mu0) >= std::abs(mu1) ? 0 : 1;
    Complex m = lead == 0 ? mu0 : mu1;
    bool upper = m.imag() > 0.0 || (m.imag() == 0.0 && m.real() > 0.0);
    if (!upper) {
        mu0 = -mu0;
        mu1 = -mu1;
    }
    return {mu0, mu1};
}

// Unit direction in the colour frame from the inverse stereographic chart of
// mu = mu0/mu1. Invariant under xi -> -xi; the chart pole with mu0 = 0 maps
// to (-1, 0, 0), the mu1 = 0 pole comes out of the generic formula as (1,0,0).
inline std::array<double, 3> u_field(const std::array<Complex, 3>& xi) {
    if (xi[0] == Complex(0) && xi[1] == Complex(0) && xi[2] == Complex(0))
        throw std::domain_error("direction undefined for xi = 0");
    Complex w = xi[1] + Complex(0, 1) * xi[2];
    double A = std::norm(xi[0]);
    double B = std::norm(w);
    if (A + B == 0.0) return {-1.0, 0.0, 0.0};
    Complex cross = std::conj(xi[0]) * w;
    return {(B - A) / (A + B), -2.0 * cross.real() / (A + B), -2.0 * cross.imag() / (A + B)};
}

// epsilon(x) * sum_k u_k(x) (phi(y_k) - phi(x)) with y_k the colour-k neighbor.
inline VertexFunction<Complex> directional_pairing(const Graph& g, const VertexFunction<Complex>& phi,
                                                   const std::vector<std::array<double, 3>>& U,
                                                   const std::vector<int>& eps,
                                                   const EdgeColoring& col) {
    auto nb = colour_neighbors(g, col);
    VertexFunction<Complex> out(g.n());
    for (int x = 0; x < g.n(); ++x) {
        Complex s(0);
        for (int k = 0; k < 3; ++k) s += U[x][k] * (phi[nb[x][k]] - phi[x]);
        out[x] = double(eps[x]) * s;
    }
    return out;
}

struct EvolveResult {
    VertexFunction<Complex> next;
    double linear_residual = 0.0;  // max vertex equation residual of the linear system
    bool consistent = false;       // linear_residual < 1e-9
    bool rank_deficient = false;   // solution family larger than the gauge quotient
    int kernel_dim = 0;
};

// One step of d phi_{n+1}(U) = -Laplacian(phi_n), solved in least squares
// with phi_{n+1}(gauge) = 0. When the gauge-fixed system is rank-deficient
// the least-squares family is an affine space; within it we pick the point
// minimizing the holomorphy defect of phi_{n+1} (damped Gauss-Newton over the
// kernel coordinates, started at the minimum-norm solution), which is the
// successive *holomorphic* function whenever one exists in the family.
inline EvolveResult evolve_step(const Graph& g, const VertexFunction<Complex>& phi_n,
                                const std::vector<std::array<double, 3>>& U,
                                const std::vector<int>& eps, const EdgeColoring& col,
                                int gauge_vertex = 0) {
    auto nb = colour_neighbors(g, col);
    int n = g.n();
    VertexFunction<Complex> lap = laplacian(g, phi_n);

    // unknowns: phi' at every vertex except the gauge vertex (pinned to 0)
    std::vector<int> unknown_of(n, -1);
    int u = 0;
    for (int x = 0; x < n; ++x)
        if (x != gauge_vertex) unknown_of[x] = u++;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n - 1);
    Eigen::VectorXcd b(n);
    for (int x = 0; x < n; ++x) {
        for (int k = 0; k < 3; ++k) {
            double c = eps[x] * U[x][k];
            int y = nb[x][k];
            if (unknown_of[y] >= 0) A(x, unknown_of[y]) += c;
            if (unknown_of[x] >= 0) A(x, unknown_of[x]) -= c;
        }
        b(x) = -lap[x];
    }

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(A);
    Eigen::VectorXcd sol = cod.solve(b);  // minimum-norm least-squares solution
    int rank = static_cast<int>(cod.rank());
    int kdim = (n - 1) - rank;

    if (kdim > 0) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
        Eigen::MatrixXcd K = svd.matrixV().rightCols(kdim);
        // residuals r_x(c) = sum_y (phi'(y) - phi'(x))^2 are holomorphic in c,
        // so complex Gauss-Newton applies directly
        auto assemble = [&](const Eigen::VectorXcd& c) {
            Eigen::VectorXcd full = Eigen::VectorXcd::Zero(n);
            Eigen::VectorXcd red = sol + K * c;
            for (int x = 0; x < n; ++x)
                if (unknown_of[x] >= 0) full(x) = red(unknown_of[x]);
            return full;
        };
        auto defect = [&](const Eigen::VectorXcd& full, Eigen::VectorXcd& r, Eigen::MatrixXcd* J,
                          const Eigen::MatrixXcd& Kfull) {
            r.resize(n);
            if (J) J->setZero(n, Kfull.cols());
            for (int x = 0; x < n; ++x) {
                Complex s(0);
                for (int y : g.neighbors(x)) {
                    Complex d = full(y) - full(x);
                    s += d * d;
                    if (J) J->row(x) += 2.0 * d * (Kfull.row(y) - Kfull.row(x));
                }
                r(x) = s;
            }
        };
        Eigen::MatrixXcd Kfull = Eigen::MatrixXcd::Zero(n, kdim);
        for (int x = 0; x < n; ++x)
            if (unknown_of[x] >= 0) Kfull.row(x) = K.row(unknown_of[x]);
        Eigen::VectorXcd c = Eigen::VectorXcd::Zero(kdim);
        Eigen::VectorXcd r;
        Eigen::MatrixXcd J;
        double lambda = 1e-3;
        defect(assemble(c), r, &J, Kfull);
        double cost = r.squaredNorm();
        for (int it = 0; it < 200 && r.lpNorm<Eigen::Infinity>() > 1e-13; ++it) {
            Eigen::MatrixXcd H = J.adjoint() * J + lambda * Eigen::MatrixXcd::Identity(kdim, kdim);
            Eigen::VectorXcd step = H.ldlt().solve(-(J.adjoint() * r));
            Eigen::VectorXcd c2 = c + step;
            Eigen::VectorXcd r2;
            defect(assemble(c2), r2, nullptr, Kfull);
            double cost2 = r2.squaredNorm();
            if (cost2 < cost) {
                c = c2;
                cost = cost2;
                lambda = std::max(lambda / 3.0, 1e-12);
                defect(assemble(c), r, &J, Kfull);
            } else {
                lambda *= 10.0;
                if (lambda > 1e12) break;
            }
        }
        sol = sol + K * c;
    }

    EvolveResult res;
    res.next = VertexFunction<Complex>(n);
    for (int x = 0; x < n; ++x)
        if (unknown_of[x] >= 0) res.next[x] = sol(unknown_of[x]);
    Eigen::VectorXcd lin = A * sol - b;
    res.linear_residual = lin.lpNorm<Eigen::Infinity>();
    res.consistent = res.linear_residual < 1e-9;
    res.rank_deficient = kdim > 0;
    res.kernel_dim = kdim;
    return res;
}

struct SignSearchResult {
    std::vector<int> eps;
    double residual = 0.0;
    bool exhaustive = true;
    bool budget_exhausted = false;
    std::uint64_t evaluations = 0;
};

namespace detail {

inline double sign_residual(const Graph& g, const std::vector<std::array<int, 3>>& nb,
                            const std::vector<std::array<double, 3>>& U,
                            const VertexFunction<Complex>& lap, const std::vector<int>& eps,
                            int gauge_vertex) {
    int n = g.n();
    std::vector<int> unknown_of(n, -1);
    int u = 0;
    for (int x = 0; x < n; ++x)
        if (x != gauge_vertex) unknown_of[x] = u++;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n - 1);
    Eigen::VectorXcd b(n);
    for (int x = 0; x < n; ++x) {
        for (int k = 0; k < 3; ++k) {
            double c = eps[x] * U[x][k];
            int y = nb[x][k];
            if (unknown_of[y] >= 0) A(x, unknown_of[y]) += c;
            if (unknown_of[x] >= 0) A(x, unknown_of[x]) -= c;
        }
        b(x) = -lap[x];
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(A);
    Eigen::VectorXcd sol = cod.solve(b);
    return (A * sol - b).lpNorm<Eigen::Infinity>();
}

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace detail

// Search over sign assignments for the direction field; the global flip
// eps -> -eps never changes the system, so eps at the first vertex is pinned
// to +1. Exhaustive for |V| <= 20: assignments are scanned in lexicographic
// order over vertices (+1 before -1) and the first one meeting the residual
// target wins; with no hit, the first assignment attaining the minimum wins.
// Larger graphs fall back to a seeded greedy bit-flip search. max_evals caps
// the system solves in both regimes; 0 means no explicit cap (the full scan
// in the exhaustive regime, 20000 evaluations in the heuristic one). A search
// cut short (or a heuristic miss) reports budget_exhausted, a completed scan
// that merely misses the target does not: that minimum is definitive.
inline SignSearchResult sign_search(const Graph& g, const VertexFunction<Complex>& phi_n,
                                    const std::vector<std::array<double, 3>>& U,
                                    const EdgeColoring& col, double target = 1e-9,
                                    std::uint64_t seed = 0, std::uint64_t max_evals = 0,
                                    int gauge_vertex = 0) {
    auto nb = colour_neighbors(g, col);
    VertexFunction<Complex> lap = laplacian(g, phi_n);
    int n = g.n();
    if (max_evals == 0)
        max_evals = n <= 20 ? std::numeric_limits<std::uint64_t>::max() : 20000;
    SignSearchResult res;
    res.eps.assign(n, 1);
    if (n <= 20) {
        std::vector<int> eps(n, 1), best(n, 1);
        double best_r = -1.0;
        std::uint64_t total = n >= 1 ? (1ull << (n - 1)) : 1;
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            if (res.evaluations >= max_evals) {
                // cut short with no hit: best-so-far, and the scan proves nothing
                res.exhaustive = false;
                res.budget_exhausted = true;
                break;
            }
            for (int j = 1; j < n; ++j) eps[j] = (mask >> (n - 1 - j)) & 1 ? -1 : 1;
            double r = detail::sign_residual(g, nb, U, lap, eps, gauge_vertex);
            ++res.evaluations;
            if (r < target) {
                res.eps = eps;
                res.residual = r;
                return res;
            }
            if (best_r < 0 || r < best_r) {
                best_r = r;
                best = eps;
            }
        }
        res.eps = best;
        res.residual = best_r < 0 ? std::numeric_limits<double>::infinity() : best_r;
        return res;
    }
    // heuristic: greedy single-flip descent with seeded restarts
    res.exhaustive = false;
    std::vector<int> eps(n, 1), best(n, 1);
    double best_r = -1.0;
    std::uint64_t evals = 0, restart = 0;
    while (evals < max_evals) {
        for (int j = 1; j < n; ++j)
            eps[j] = (detail::mix64(seed * 0x9E3779B97F4A7C15ull + restart * 1000003ull + j) & 1) ? -1 : 1;
        if (restart == 0) std::fill(eps.begin(), eps.end(), 1);
        eps[0] = 1;
        double r = detail::sign_residual(g, nb, U, lap, eps, gauge_vertex);
        ++evals;
        bool improved = true;
        while (improved && evals < max_evals) {
            improved = false;
            for (int j = 1; j < n && evals < max_evals; ++j) {
                eps[j] = -eps[j];
                double r2 = detail::sign_residual(g, nb, U, lap, eps, gauge_vertex);
                ++evals;
                if (r2 < r) {
                    r = r2;
                    improved = true;
                } else {
                    eps[j] = -eps[j];
                }
            }
        }
        if (best_r < 0 || r < best_r) {
            best_r = r;
            best = eps;
        }
        if (best_r < target) break;
        ++restart;
    }
    res.eps = best;
    res.residual = best_r;
    res.evaluations = evals;
    res.budget_exhausted = best_r >= target;
    return res;
}

} // namespace twistor
