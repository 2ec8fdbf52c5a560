#pragma once

#include "twistor/cycles.hpp"
#include "twistor/graph.hpp"
#include "twistor/scalar.hpp"

#include <optional>
#include <queue>
#include <string>
#include <vector>

namespace twistor {

// Complex value per vertex, indexed like Graph::vertices(). C is either
// GaussianRational (exact lane) or std::complex<double> (floating lane).
template <class C>
struct VertexFunction {
    std::vector<C> values;

    VertexFunction() = default;
    explicit VertexFunction(int n) : values(n, C(0)) {}

    C& operator[](int i) { return values[i]; }
    const C& operator[](int i) const { return values[i]; }
    int size() const { return static_cast<int>(values.size()); }
};

// Antisymmetric edge assignment. One value is stored per undirected edge, in
// the canonical direction u -> v with u < v; the reverse direction negates.
template <class C>
struct OneForm {
    std::vector<C> values;

    OneForm() = default;
    explicit OneForm(int m) : values(m, C(0)) {}

    int size() const { return static_cast<int>(values.size()); }
};

template <class C>
C form_value(const Graph& g, const OneForm<C>& w, int from, int to) {
    const std::string& a = g.label(from);
    const std::string& b = g.label(to);
    int e = g.edge_index(Edge(a, b));
    return a < b ? w.values[e] : -w.values[e];
}

// dphi(x -> y) = phi(y) - phi(x)
template <class C>
OneForm<C> differential(const Graph& g, const VertexFunction<C>& phi) {
    OneForm<C> w(g.m());
    for (int e = 0; e < g.m(); ++e) {
        int u = g.index_of(g.edges()[e].u);
        int v = g.index_of(g.edges()[e].v);
        w.values[e] = phi[v] - phi[u];
    }
    return w;
}

// d*w(x) = -(1/m(x)) sum_{y~x} w(x -> y)
template <class C>
VertexFunction<C> coderivative(const Graph& g, const OneForm<C>& w) {
    VertexFunction<C> out(g.n());
    for (int x = 0; x < g.n(); ++x) {
        if (g.degree(x) == 0)
            throw std::domain_error("coderivative undefined at isolated vertex " + g.label(x));
        C s(0);
        for (int y : g.neighbors(x)) s += form_value(g, w, x, y);
        out[x] = -s / C(g.degree(x));
    }
    return out;
}

// Laplacian with the mean-of-neighbors sign convention: f(x) - avg_{y~x} f(y).
template <class C>
VertexFunction<C> laplacian(const Graph& g, const VertexFunction<C>& f) {
    VertexFunction<C> out(g.n());
    for (int x = 0; x < g.n(); ++x) {
        if (g.degree(x) == 0)
            throw std::domain_error("laplacian undefined at isolated vertex " + g.label(x));
        C s(0);
        for (int y : g.neighbors(x)) s += f[y];
        out[x] = f[x] - s / C(g.degree(x));
    }
    return out;
}

// r(x) = sum_{y~x} w(x -> y)^2; zero everywhere iff w is isotropic.
template <class C>
VertexFunction<C> isotropy_residuals(const Graph& g, const OneForm<C>& w) {
    VertexFunction<C> out(g.n());
    for (int x = 0; x < g.n(); ++x) {
        C s(0);
        for (int y : g.neighbors(x)) {
            C v = form_value(g, w, x, y);
            s += v * v;
        }
        out[x] = s;
    }
    return out;
}

template <class C>
C cycle_sum(const Graph& g, const OneForm<C>& w, const Cycle& c) {
    C s(0);
    for (const auto& [from, to] : c.steps) s += form_value(g, w, from, to);
    return s;
}

template <class C>
struct IntegrateResult {
    std::optional<VertexFunction<C>> function;  // empty: cycle condition violated
    std::vector<C> cycle_sums;                  // one per fundamental cycle
    Cycle worst_cycle;
    C worst_sum = C(0);
    double worst_abs = 0.0;
};

// Antidifferentiation: phi with phi(base) = base_value and dphi = w, defined
// exactly when every fundamental cycle sum vanishes. In the floating lane the
// cycle test uses |sum| < tol * (1 + max |w|); the exact lane needs zero.
template <class C>
IntegrateResult<C> integrate(const Graph& g, const OneForm<C>& w, const std::string& base,
                             const C& base_value, double tol = 1e-9, int first_root = 0) {
    IntegrateResult<C> res;
    double wmax = 0.0;
    for (const auto& v : w.values) wmax = std::max(wmax, scalar_abs(v));
    CycleBasis basis = cycle_basis(g, first_root);
    bool integrable = true;
    for (const auto& c : basis.cycles) {
        C s = cycle_sum(g, w, c);
        if (is_exact_v<C> ? !scalar_is_zero(s) : scalar_abs(s) >= tol * (1.0 + wmax))
            integrable = false;
        double a = scalar_abs(s);
        if (a > res.worst_abs) {
            res.worst_abs = a;
            res.worst_sum = s;
            res.worst_cycle = c;
        }
        res.cycle_sums.push_back(s);
    }
    if (!integrable) return res;
    VertexFunction<C> phi(g.n());
    std::vector<char> seen(g.n(), 0);
    int b = g.index_of(base);
    phi[b] = base_value;
    seen[b] = 1;
    std::queue<int> q;
    q.push(b);
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int y : g.neighbors(x)) {
            if (seen[y]) continue;
            phi[y] = phi[x] + form_value(g, w, x, y);
            seen[y] = 1;
            q.push(y);
        }
    }
    for (int x = 0; x < g.n(); ++x)
        if (!seen[x]) throw std::domain_error("integrate requires a connected graph; vertex " + g.label(x) + " unreachable");
    res.function = std::move(phi);
    return res;
}

} // namespace twistor
