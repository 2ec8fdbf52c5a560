#pragma once

#include "twistor/calculus.hpp"
#include "twistor/generators.hpp"
#include "twistor/graph.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace twistor {

// r(x) = sum_{y~x}(phi(y) - phi(x))^2, the same quantity as the isotropy
// residual of dphi.
template <class C>
VertexFunction<C> holomorphy_residuals(const Graph& g, const VertexFunction<C>& phi) {
    VertexFunction<C> out(g.n());
    for (int x = 0; x < g.n(); ++x) {
        C s(0);
        for (int y : g.neighbors(x)) {
            C d = phi[y] - phi[x];
            s += d * d;
        }
        out[x] = s;
    }
    return out;
}

template <class C>
struct HolomorphyReport {
    bool holomorphic = false;
    int worst_vertex = -1;
    double worst_abs = 0.0;
    C worst_residual = C(0);
};

template <class C>
HolomorphyReport<C> is_holomorphic(const Graph& g, const VertexFunction<C>& phi, double tol = 1e-9) {
    VertexFunction<C> r = holomorphy_residuals(g, phi);
    HolomorphyReport<C> rep;
    for (int x = 0; x < g.n(); ++x) {
        double a = scalar_abs(r[x]);
        if (a > rep.worst_abs || rep.worst_vertex < 0) {
            rep.worst_abs = a;
            rep.worst_vertex = x;
            rep.worst_residual = r[x];
        }
    }
    if constexpr (is_exact_v<C>) {
        rep.holomorphic = rep.worst_vertex < 0 || scalar_is_zero(rep.worst_residual);
        for (int x = 0; x < g.n() && rep.holomorphic; ++x) rep.holomorphic = scalar_is_zero(r[x]);
    } else {
        rep.holomorphic = rep.worst_abs < tol;
    }
    return rep;
}

// Mapping of graphs: adjacent vertices map to equal or adjacent vertices.
struct GraphMap {
    const Graph* source = nullptr;
    const Graph* target = nullptr;
    std::vector<int> image;  // source index -> target index

    bool valid() const {
        for (int x = 0; x < source->n(); ++x)
            for (int y : source->neighbors(x)) {
                if (y < x) continue;
                if (image[x] != image[y] && !target->has_edge(image[x], image[y])) return false;
            }
        return true;
    }
};

struct DilationWitness {
    int vertex = -1;      // source vertex where fiber counts disagree
    int target_a = -1;    // neighbors of the image with different counts
    int target_b = -1;
    int count_a = 0;
    int count_b = 0;
};

struct DilationResult {
    std::optional<std::vector<int>> lambda;
    DilationWitness witness;
};

// lambda(x, z') = #{x'~x : f(x') = z'} over neighbors z' of f(x); f is
// holomorphic (semi-conformal) iff this count is independent of z'. Vertices
// with all neighbors collapsing onto f(x) get lambda = 0.
inline DilationResult map_dilation(const GraphMap& f) {
    if (!f.valid()) throw std::invalid_argument("not a mapping of graphs");
    DilationResult res;
    std::vector<int> lambda(f.source->n(), 0);
    for (int x = 0; x < f.source->n(); ++x) {
        int fx = f.image[x];
        std::map<int, int> count;
        for (int z : f.target->neighbors(fx)) count[z] = 0;
        for (int y : f.source->neighbors(x)) {
            int fy = f.image[y];
            if (fy != fx) ++count[fy];  // fy is adjacent to fx by validity
        }
        int common = -1;
        for (int z : f.target->neighbors(fx)) {
            if (common < 0) common = count[z];
            if (count[z] != common) {
                res.witness.vertex = x;
                // report the first disagreeing pair deterministically
                for (int z1 : f.target->neighbors(fx))
                    for (int z2 : f.target->neighbors(fx)) {
                        if (count[z1] != count[z2]) {
                            res.witness.target_a = z1;
                            res.witness.target_b = z2;
                            res.witness.count_a = count[z1];
                            res.witness.count_b = count[z2];
                            return res;
                        }
                    }
            }
        }
        lambda[x] = common < 0 ? 0 : common;
    }
    res.lambda = std::move(lambda);
    return res;
}

template <class C>
VertexFunction<C> pullback(const GraphMap& f, const VertexFunction<C>& g_target) {
    VertexFunction<C> out(f.source->n());
    for (int x = 0; x < f.source->n(); ++x) out[x] = g_target[f.image[x]];
    return out;
}

// Orthographic projection of the n-cube: phi(e) = sum_k e_k z_k is holomorphic
// on the hypercube skeleton exactly when sum z_k^2 = 0.
template <class C>
std::pair<Graph, VertexFunction<C>> hypercube_projection(const std::vector<C>& z) {
    int n = static_cast<int>(z.size());
    C s(0);
    for (const C& v : z) s += v * v;
    if constexpr (is_exact_v<C>) {
        if (!scalar_is_zero(s)) throw std::domain_error("projection tuple is not isotropic");
    } else {
        if (scalar_abs(s) >= 1e-12) throw std::domain_error("projection tuple is not isotropic");
    }
    Graph g = generate_hypercube(n).graph;
    VertexFunction<C> phi(g.n());
    for (int i = 0; i < g.n(); ++i) {
        const std::string& l = g.label(i);
        C v(0);
        for (int k = 0; k < n; ++k)
            if (l[k] == '1') v += z[k];
        phi[i] = v;
    }
    return {std::move(g), std::move(phi)};
}

// (z_1+...+z_n)^2 - (n+1)(z_1^2+...+z_n^2); vanishes when the z_k are the
// projected edge vectors of a regular n-simplex.
template <class C>
C simplex_projection_residual(const std::vector<C>& z) {
    C sum(0), sq(0);
    for (const C& v : z) {
        sum += v;
        sq += v * v;
    }
    return sum * sum - C(static_cast<int>(z.size()) + 1) * sq;
}

struct LatticeExtendResult {
    Graph window;
    VertexFunction<Complex> values;
};

// Fill a lattice window row by row from two seed rows. The vertex equation at
// (x, n) couples the in-window neighbors of (x, n): in-row neighbors, (x, n-1)
// and the unknown (x, n+1), whose squared difference must cancel the rest:
//   (phi(x, n+1) - phi(x, n))^2 = -sum_other (phi(w) - phi(x, n))^2.
// Each step takes the principal square root; branch bit r flips the sign used
// for the whole row r (rows are indexed from 2).
inline LatticeExtendResult lattice_extend(const std::vector<int>& dims,
                                          const std::vector<Complex>& g0,
                                          const std::vector<Complex>& g1,
                                          const std::vector<bool>& branch_bits = {}) {
    if (dims.size() < 1) throw std::invalid_argument("lattice_extend needs dimensions");
    int N = static_cast<int>(dims.size());
    int rows = dims[N - 1];
    if (rows < 3) throw std::invalid_argument("window too small: need at least 3 rows");
    long long row_size = 1;
    for (int k = 0; k + 1 < N; ++k) row_size *= dims[k];
    if (static_cast<long long>(g0.size()) != row_size || static_cast<long long>(g1.size()) != row_size)
        throw std::invalid_argument("seed rows must match the window cross-section");

    Generated gen = generate_lattice_window(dims);
    const Graph& g = gen.graph;
    VertexFunction<Complex> phi(g.n());

    // map coordinates -> vertex index; labels sort lexicographically in
    // coordinate order, with the row coordinate last
    std::vector<int> width(N);
    for (int k = 0; k < N; ++k) width[k] = detail::digits(std::max(dims[k] - 1, 0));
    auto vertex_at = [&](const std::vector<int>& x) {
        std::string s;
        for (int k = 0; k < N; ++k) {
            if (k) s += ",";
            s += detail::zero_pad(x[k], width[k]);
        }
        return g.index_of(s);
    };
    // iterate cross-section coordinates in row-major order matching g0/g1 layout
    auto each_site = [&](auto&& fn) {
        std::vector<int> x(std::max(N - 1, 0), 0);
        long long flat = 0;
        while (true) {
            fn(x, flat);
            ++flat;
            int k = N - 2;
            while (k >= 0 && x[k] == dims[k] - 1) x[k--] = 0;
            if (k < 0) break;
            ++x[k];
        }
    };

    each_site([&](const std::vector<int>& x, long long flat) {
        std::vector<int> full(x);
        full.push_back(0);
        phi[vertex_at(full)] = g0[flat];
        full[N - 1] = 1;
        phi[vertex_at(full)] = g1[flat];
    });

    for (int r = 1; r + 1 < rows; ++r) {
        bool flip = (r - 1) < static_cast<int>(branch_bits.size()) && branch_bits[r - 1];
        each_site([&](const std::vector<int>& x, long long) {
            std::vector<int> full(x);
            full.push_back(r);
            int center = vertex_at(full);
            Complex rest(0);
            for (int k = 0; k + 1 < N; ++k) {
                for (int d : {-1, +1}) {
                    if (x[k] + d < 0 || x[k] + d >= dims[k]) continue;
                    std::vector<int> w(full);
                    w[k] += d;
                    Complex diff = phi[vertex_at(w)] - phi[center];
                    rest += diff * diff;
                }
            }
            std::vector<int> below(full);
            --below[N - 1];
            Complex diff = phi[vertex_at(below)] - phi[center];
            rest += diff * diff;
            Complex step = std::sqrt(-rest);
            if (flip) step = -step;
            std::vector<int> above(full);
            ++above[N - 1];
            Complex value = phi[center] + step;
            if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
                std::string site;
                for (size_t k = 0; k < above.size(); ++k)
                    site += (k ? "," : "") + std::to_string(above[k]);
                throw std::overflow_error("lattice_extend: non-finite value at (" + site + ")");
            }
            phi[vertex_at(above)] = value;
        });
    }
    return {g, std::move(phi)};
}

} // namespace twistor
