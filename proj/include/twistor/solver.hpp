#pragma once

#include "twistor/calculus.hpp"
#include "twistor/graph.hpp"
#include "twistor/holomorphy.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace twistor {

// Counter-based generator: a fixed (seed, stream) pair yields the same
// sequence on every platform, which keeps restart k's starting point
// independent of how restarts are scheduled.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : state_(mix(seed ^ mix(stream * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }
    // uniform in [0, 1)
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }
    double uniform_pm2() { return 4.0 * next_double() - 2.0; }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    std::uint64_t state_;
};

struct SolveConfig {
    std::uint64_t seed = 0;
    int restarts = 200;
    int max_iters = 500;
    double target = 1e-9;
    double lambda0 = 1e-3;
    double dedup_tol = 1e-6;
    bool nondegeneracy = true;  // isotropic search only
};

struct RestartStatus {
    int index = 0;
    std::string status;  // converged | stalled | diverged
    double residual = 0.0;
    int solution_class = -1;
    int iterations = 0;
};

template <class Sol>
struct SolveReport {
    std::vector<Sol> solutions;
    std::vector<double> residuals;  // max vertex residual per solution
    std::vector<RestartStatus> statuses;
    double wall_seconds = 0.0;
    bool found() const { return !solutions.empty(); }
};

namespace detail {

inline void check_config(const SolveConfig& cfg) {
    if (cfg.target <= 0) throw std::invalid_argument("residual target must be positive");
    if (cfg.restarts < 1) throw std::invalid_argument("need at least one restart");
}

// Levenberg-damped Gauss-Newton on a real least-squares problem supplied as
// callbacks. Returns (status, iterations); x is left at the best point.
template <class EvalR, class EvalJ, class Converged>
std::pair<std::string, int> damped_gauss_newton(Eigen::VectorXd& x, EvalR eval_r, EvalJ eval_j,
                                                Converged converged, const SolveConfig& cfg) {
    Eigen::VectorXd r = eval_r(x);
    double cost = r.squaredNorm();
    if (!std::isfinite(cost)) return {"diverged", 0};
    double lambda = cfg.lambda0;
    int slow = 0;
    for (int it = 1; it <= cfg.max_iters; ++it) {
        if (converged(r)) return {"converged", it - 1};
        Eigen::MatrixXd J = eval_j(x);
        Eigen::MatrixXd H = J.transpose() * J;
        H.diagonal().array() += lambda;
        Eigen::VectorXd step = H.ldlt().solve(-(J.transpose() * r));
        Eigen::VectorXd x2 = x + step;
        Eigen::VectorXd r2 = eval_r(x2);
        double cost2 = r2.squaredNorm();
        if (!std::isfinite(cost2)) return {"diverged", it};
        if (cost2 < cost) {
            slow = cost - cost2 < 1e-14 * cost ? slow + 1 : 0;
            x = x2;
            r = r2;
            cost = cost2;
            lambda = std::max(lambda / 3.0, 1e-12);
            if (slow >= 10) return {"stalled", it};
        } else {
            lambda *= 10.0;
            if (lambda > 1e12) return {"stalled", it};
        }
    }
    return {converged(r) ? "converged" : "stalled", cfg.max_iters};
}

// best-fit affine map c*phi + a -> chi in least squares, then the max-norm
// distance at that fit; used as the gauge-orbit distance for dedup
inline double affine_orbit_distance(const VertexFunction<Complex>& phi,
                                    const VertexFunction<Complex>& chi) {
    int n = static_cast<int>(phi.size());
    Complex spp(0), sp(0), spc(0), sc(0);
    for (int x = 0; x < n; ++x) {
        spp += std::conj(phi[x]) * phi[x];
        sp += phi[x];
        spc += std::conj(phi[x]) * chi[x];
        sc += chi[x];
    }
    Eigen::Matrix2cd M;
    M << spp, std::conj(sp), sp, Complex(double(n));
    Eigen::Vector2cd rhs(spc, sc);
    Eigen::Vector2cd ca = M.fullPivLu().solve(rhs);
    double d = 0.0;
    for (int x = 0; x < n; ++x) d = std::max(d, std::abs(ca(0) * phi[x] + ca(1) - chi[x]));
    return d;
}

inline double scale_orbit_distance(const OneForm<Complex>& w, const OneForm<Complex>& v) {
    Complex num(0);
    double den = 0.0;
    for (std::size_t e = 0; e < w.values.size(); ++e) {
        num += std::conj(w.values[e]) * v.values[e];
        den += std::norm(w.values[e]);
    }
    Complex s = den == 0.0 ? Complex(0) : num / den;
    double d = 0.0;
    for (std::size_t e = 0; e < w.values.size(); ++e)
        d = std::max(d, std::abs(s * w.values[e] - v.values[e]));
    return d;
}

} // namespace detail

// Random-restart damped Gauss-Newton for a holomorphic function on a
// connected graph. Gauge: phi = 0 at the first vertex, 1 at its first
// neighbor; restarts start from i.i.d. uniform [-2,2] components keyed by
// (seed, restart). An empty solution list means none found within budget,
// never nonexistence.
inline SolveReport<VertexFunction<Complex>> solve_holomorphic(const Graph& g,
                                                              const SolveConfig& cfg = {}) {
    detail::check_config(cfg);
    if (g.n() < 2) throw std::invalid_argument("need at least two vertices");
    if (!g.connected()) throw std::invalid_argument("graph must be connected");
    auto t0 = std::chrono::steady_clock::now();

    int n = g.n();
    int x0 = 0;
    int x1 = g.neighbors(0).empty() ? 1 : g.neighbors(0)[0];
    std::vector<int> unknown_of(n, -1);
    int nu = 0;
    for (int v = 0; v < n; ++v)
        if (v != x0 && v != x1) unknown_of[v] = nu++;

    auto assemble = [&](const Eigen::VectorXd& x) {
        VertexFunction<Complex> phi(n);
        phi[x1] = Complex(1);
        for (int v = 0; v < n; ++v)
            if (unknown_of[v] >= 0) phi[v] = Complex(x(2 * unknown_of[v]), x(2 * unknown_of[v] + 1));
        return phi;
    };
    auto eval_r = [&](const Eigen::VectorXd& x) {
        VertexFunction<Complex> phi = assemble(x);
        Eigen::VectorXd r(2 * n);
        for (int v = 0; v < n; ++v) {
            Complex s(0);
            for (int y : g.neighbors(v)) {
                Complex d = phi[y] - phi[v];
                s += d * d;
            }
            r(2 * v) = s.real();
            r(2 * v + 1) = s.imag();
        }
        return r;
    };
    auto eval_j = [&](const Eigen::VectorXd& x) {
        VertexFunction<Complex> phi = assemble(x);
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * nu);
        auto add = [&](int row_v, int col_v, Complex c) {
            int j = unknown_of[col_v];
            if (j < 0) return;
            J(2 * row_v, 2 * j) += c.real();
            J(2 * row_v, 2 * j + 1) -= c.imag();
            J(2 * row_v + 1, 2 * j) += c.imag();
            J(2 * row_v + 1, 2 * j + 1) += c.real();
        };
        for (int v = 0; v < n; ++v) {
            Complex diag(0);
            for (int y : g.neighbors(v)) {
                Complex d = phi[y] - phi[v];
                add(v, y, 2.0 * d);
                diag -= 2.0 * d;
            }
            add(v, v, diag);
        }
        return J;
    };
    auto converged = [&](const Eigen::VectorXd& r) {
        double worst = 0.0;
        for (int v = 0; v < n; ++v)
            worst = std::max(worst, std::hypot(r(2 * v), r(2 * v + 1)));
        return worst < cfg.target;
    };

    SolveReport<VertexFunction<Complex>> rep;
    for (int k = 0; k < cfg.restarts; ++k) {
        CounterRng rng(cfg.seed, std::uint64_t(k));
        Eigen::VectorXd x(2 * nu);
        for (int j = 0; j < 2 * nu; ++j) x(j) = rng.uniform_pm2();
        RestartStatus st;
        st.index = k;
        if (nu == 0) {
            Eigen::VectorXd r = eval_r(x);
            st.status = converged(r) ? "converged" : "stalled";
        } else {
            auto [status, iters] = detail::damped_gauss_newton(x, eval_r, eval_j, converged, cfg);
            st.status = status;
            st.iterations = iters;
        }
        VertexFunction<Complex> phi = assemble(x);
        // independent re-verification; the optimizer's own residual does not count
        auto res = holomorphy_residuals(g, phi);
        double worst = 0.0;
        for (int v = 0; v < n; ++v) worst = std::max(worst, std::abs(res[v]));
        st.residual = worst;
        if (st.status == "converged" && worst < cfg.target) {
            int cls = -1;
            for (std::size_t s = 0; s < rep.solutions.size(); ++s)
                if (detail::affine_orbit_distance(rep.solutions[s], phi) < cfg.dedup_tol) {
                    cls = static_cast<int>(s);
                    break;
                }
            if (cls < 0) {
                cls = static_cast<int>(rep.solutions.size());
                rep.solutions.push_back(phi);
                rep.residuals.push_back(worst);
            }
            st.solution_class = cls;
        } else if (st.status == "converged") {
            st.status = "stalled";  // optimizer claim failed re-verification
        }
        rep.statuses.push_back(st);
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// Same scheme for an isotropic 1-form: one complex unknown per canonical
// edge. Vertex residuals use squares, so they are direction-independent.
// The zero form is excluded by a penalty row |w|^2 - |E| (nondegeneracy);
// reported solutions are rescaled to |w|^2 = |E| with the largest-modulus
// entry rotated to the positive real axis, and deduplicated up to complex
// scale.
inline SolveReport<OneForm<Complex>> solve_isotropic(const Graph& g, const SolveConfig& cfg = {}) {
    detail::check_config(cfg);
    if (!g.connected()) throw std::invalid_argument("graph must be connected");
    if (g.m() == 0) throw std::invalid_argument("graph has no edges");
    auto t0 = std::chrono::steady_clock::now();

    int n = g.n();
    int m = g.m();
    int rows = 2 * n + (cfg.nondegeneracy ? 1 : 0);

    auto assemble = [&](const Eigen::VectorXd& x) {
        OneForm<Complex> w(m);
        for (int e = 0; e < m; ++e) w.values[e] = Complex(x(2 * e), x(2 * e + 1));
        return w;
    };
    std::vector<std::vector<int>> edges_at(n);
    for (int e = 0; e < m; ++e) {
        const Edge& ed = g.edges()[e];
        edges_at[g.index_of(ed.u)].push_back(e);
        edges_at[g.index_of(ed.v)].push_back(e);
    }
    auto eval_r = [&](const Eigen::VectorXd& x) {
        OneForm<Complex> w = assemble(x);
        Eigen::VectorXd r = Eigen::VectorXd::Zero(rows);
        for (int v = 0; v < n; ++v) {
            Complex s(0);
            for (int e : edges_at[v]) s += w.values[e] * w.values[e];
            r(2 * v) = s.real();
            r(2 * v + 1) = s.imag();
        }
        if (cfg.nondegeneracy) {
            double norm2 = 0.0;
            for (int e = 0; e < m; ++e) norm2 += std::norm(w.values[e]);
            r(2 * n) = norm2 - double(m);
        }
        return r;
    };
    auto eval_j = [&](const Eigen::VectorXd& x) {
        OneForm<Complex> w = assemble(x);
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(rows, 2 * m);
        for (int v = 0; v < n; ++v)
            for (int e : edges_at[v]) {
                Complex c = 2.0 * w.values[e];
                J(2 * v, 2 * e) += c.real();
                J(2 * v, 2 * e + 1) -= c.imag();
                J(2 * v + 1, 2 * e) += c.imag();
                J(2 * v + 1, 2 * e + 1) += c.real();
            }
        if (cfg.nondegeneracy)
            for (int e = 0; e < m; ++e) {
                J(2 * n, 2 * e) = 2.0 * x(2 * e);
                J(2 * n, 2 * e + 1) = 2.0 * x(2 * e + 1);
            }
        return J;
    };
    auto converged = [&](const Eigen::VectorXd& r) {
        double worst = 0.0;
        for (int v = 0; v < n; ++v)
            worst = std::max(worst, std::hypot(r(2 * v), r(2 * v + 1)));
        return worst < cfg.target;
    };

    SolveReport<OneForm<Complex>> rep;
    for (int k = 0; k < cfg.restarts; ++k) {
        CounterRng rng(cfg.seed, std::uint64_t(k));
        Eigen::VectorXd x(2 * m);
        for (int j = 0; j < 2 * m; ++j) x(j) = rng.uniform_pm2();
        RestartStatus st;
        st.index = k;
        auto [status, iters] = detail::damped_gauss_newton(x, eval_r, eval_j, converged, cfg);
        st.status = status;
        st.iterations = iters;
        OneForm<Complex> w = assemble(x);
        double norm2 = 0.0;
        for (int e = 0; e < m; ++e) norm2 += std::norm(w.values[e]);
        if (st.status == "converged" && norm2 > 0.5 * m) {
            double scale = std::sqrt(double(m) / norm2);
            int lead = 0;
            for (int e = 1; e < m; ++e)
                if (std::abs(w.values[e]) > std::abs(w.values[lead])) lead = e;
            Complex dir = w.values[lead] / std::abs(w.values[lead]);
            Complex factor = scale * std::conj(dir);
            for (int e = 0; e < m; ++e) w.values[e] *= factor;
            auto res = isotropy_residuals(g, w);
            double worst = 0.0;
            for (int v = 0; v < n; ++v) worst = std::max(worst, std::abs(res[v]));
            st.residual = worst;
            if (worst < cfg.target) {
                int cls = -1;
                for (std::size_t s = 0; s < rep.solutions.size(); ++s)
                    if (detail::scale_orbit_distance(rep.solutions[s], w) < cfg.dedup_tol) {
                        cls = static_cast<int>(s);
                        break;
                    }
                if (cls < 0) {
                    cls = static_cast<int>(rep.solutions.size());
                    rep.solutions.push_back(w);
                    rep.residuals.push_back(worst);
                }
                st.solution_class = cls;
            } else {
                st.status = "stalled";
            }
        } else if (st.status == "converged") {
            st.status = "stalled";  // degenerate (near-zero) form
            st.residual = 0.0;
        } else {
            auto res = eval_r(x);
            double worst = 0.0;
            for (int v = 0; v < n; ++v)
                worst = std::max(worst, std::hypot(res(2 * v), res(2 * v + 1)));
            st.residual = worst;
        }
        rep.statuses.push_back(st);
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace twistor
