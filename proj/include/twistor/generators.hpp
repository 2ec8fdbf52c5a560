#pragma once

#include "twistor/calculus.hpp"
#include "twistor/coloring.hpp"
#include "twistor/graph.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace twistor {

// A generated graph, possibly bundled with transcribed vertex values and an
// edge coloring. Values irrational in the source figure live only in the
// floating lane; Gaussian-integer figures fill the exact lane too.
struct Generated {
    Graph graph;
    std::optional<VertexFunction<Complex>> values;
    std::optional<VertexFunction<GaussianRational>> exact_values;
    std::optional<EdgeColoring> coloring;
};

namespace detail {

inline std::string bit_label(unsigned mask, int n) {
    std::string s(n, '0');
    for (int k = 0; k < n; ++k)
        if (mask & (1u << k)) s[k] = '1';
    return s;
}

} // namespace detail

inline Generated generate_hypercube(int n) {
    if (n < 1 || n > 12) throw std::invalid_argument("hypercube dimension must be in [1,12]");
    std::vector<std::string> vs;
    std::vector<std::pair<std::string, std::string>> es;
    for (unsigned m = 0; m < (1u << n); ++m) vs.push_back(detail::bit_label(m, n));
    for (unsigned m = 0; m < (1u << n); ++m)
        for (int k = 0; k < n; ++k)
            if (!(m & (1u << k))) es.emplace_back(detail::bit_label(m, n), detail::bit_label(m | (1u << k), n));
    return {build_graph(vs, es), std::nullopt, std::nullopt, std::nullopt};
}

// Labels are bit strings "abc". Values a - b + sqrt(2) i c make every vertex
// sum of squared neighbor differences vanish. The coloring pairs opposite
// edges of each square face so that each vertex sees colors {1,2,3}.
inline Generated generate_cube() {
    Generated gen = generate_hypercube(3);
    const Graph& g = gen.graph;
    VertexFunction<Complex> phi(g.n());
    const double s2 = std::sqrt(2.0);
    for (int i = 0; i < g.n(); ++i) {
        const std::string& l = g.label(i);
        int a = l[0] - '0', b = l[1] - '0', c = l[2] - '0';
        phi[i] = Complex(a - b, s2 * c);
    }
    EdgeColoring col;
    col.num_colors = 3;
    col.color.assign(g.m(), 0);
    for (int e = 0; e < g.m(); ++e) {
        const Edge& ed = g.edges()[e];
        int flip = 0;
        for (int k = 0; k < 3; ++k)
            if (ed.u[k] != ed.v[k]) flip = k;  // flip in {0,1,2} ~ coordinate a,b,c
        int c_low = ed.u[2] - '0';             // the c coordinate both ends share unless flip==2
        if (flip == 2) col.color[e] = 2;
        else if (flip == 1) col.color[e] = (c_low == 0) ? 1 : 3;
        else col.color[e] = (c_low == 0) ? 3 : 1;
    }
    gen.values = std::move(phi);
    gen.coloring = std::move(col);
    return gen;
}

// Degree-2/degree-4 graph on 8 vertices carrying a holomorphic function with
// Gaussian-integer values, exactly verifiable in rational arithmetic.
inline Generated generate_figure1() {
    std::vector<std::string> vs = {"v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8"};
    std::vector<std::pair<std::string, std::string>> es = {
        {"v1", "v2"}, {"v1", "v8"}, {"v2", "v3"}, {"v2", "v4"}, {"v2", "v8"}, {"v3", "v4"},
        {"v4", "v5"}, {"v4", "v6"}, {"v5", "v6"}, {"v6", "v7"}, {"v6", "v8"}, {"v7", "v8"}};
    Generated gen;
    gen.graph = build_graph(vs, es);
    std::vector<GaussianRational> vals = {
        {1, 1},  // v1
        {0, 1},  // v2
        {0, 0},  // v3
        {1, 0},  // v4
        {1, 1},  // v5
        {2, 1},  // v6
        {2, 2},  // v7
        {1, 2},  // v8
    };
    VertexFunction<GaussianRational> exact(gen.graph.n());
    VertexFunction<Complex> flo(gen.graph.n());
    for (int i = 0; i < 8; ++i) {
        exact[i] = vals[i];
        flo[i] = vals[i].to_complex();
    }
    gen.exact_values = std::move(exact);
    gen.values = std::move(flo);
    return gen;
}

inline Generated generate_cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
    int w = detail::digits(n - 1);
    std::vector<std::string> vs;
    std::vector<std::pair<std::string, std::string>> es;
    for (int i = 0; i < n; ++i) vs.push_back(detail::zero_pad(i, w));
    for (int i = 0; i < n; ++i) es.emplace_back(vs[i], vs[(i + 1) % n]);
    return {build_graph(vs, es), std::nullopt, std::nullopt, std::nullopt};
}

inline Generated generate_complete(int n) {
    if (n < 1) throw std::invalid_argument("complete graph needs at least 1 vertex");
    int w = detail::digits(n - 1);
    std::vector<std::string> vs;
    std::vector<std::pair<std::string, std::string>> es;
    for (int i = 0; i < n; ++i) vs.push_back(detail::zero_pad(i, w));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.emplace_back(vs[i], vs[j]);
    return {build_graph(vs, es), std::nullopt, std::nullopt, std::nullopt};
}

inline Generated generate_claw() {
    return {build_graph({"0", "1", "2", "3"}, {{"0", "1"}, {"0", "2"}, {"0", "3"}}),
            std::nullopt, std::nullopt, std::nullopt};
}

// Generalized Petersen graph GP(10,2): outer 10-cycle u, spokes, inner
// pentagram v with step 2.
inline Generated generate_dodecahedron() {
    std::vector<std::string> vs;
    std::vector<std::pair<std::string, std::string>> es;
    for (int i = 0; i < 10; ++i) vs.push_back("u" + std::to_string(i));
    for (int i = 0; i < 10; ++i) vs.push_back("v" + std::to_string(i));
    for (int i = 0; i < 10; ++i) {
        es.emplace_back("u" + std::to_string(i), "u" + std::to_string((i + 1) % 10));
        es.emplace_back("u" + std::to_string(i), "v" + std::to_string(i));
        es.emplace_back("v" + std::to_string(i), "v" + std::to_string((i + 2) % 10));
    }
    return {build_graph(vs, es), std::nullopt, std::nullopt, std::nullopt};
}

// Finite box in Z^N; labels are zero-padded coordinates joined by commas so
// lexicographic label order equals coordinate order.
inline Generated generate_lattice_window(const std::vector<int>& dims) {
    if (dims.empty()) throw std::invalid_argument("lattice window needs at least one dimension");
    long long total = 1;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("lattice window dimensions must be positive");
        total *= d;
        if (total > 100000) throw std::invalid_argument("lattice window too large");
    }
    int N = static_cast<int>(dims.size());
    std::vector<int> width(N);
    for (int k = 0; k < N; ++k) width[k] = detail::digits(std::max(dims[k] - 1, 0));
    auto label_of = [&](const std::vector<int>& x) {
        std::string s;
        for (int k = 0; k < N; ++k) {
            if (k) s += ",";
            s += detail::zero_pad(x[k], width[k]);
        }
        return s;
    };
    std::vector<std::string> vs;
    std::vector<std::pair<std::string, std::string>> es;
    std::vector<int> x(N, 0);
    while (true) {
        vs.push_back(label_of(x));
        for (int k = 0; k < N; ++k)
            if (x[k] + 1 < dims[k]) {
                std::vector<int> y = x;
                ++y[k];
                es.emplace_back(label_of(x), label_of(y));
            }
        int k = N - 1;
        while (k >= 0 && x[k] == dims[k] - 1) x[k--] = 0;
        if (k < 0) break;
        ++x[k];
    }
    return {build_graph(vs, es), std::nullopt, std::nullopt, std::nullopt};
}

// Family dispatch used by the CLI: name plus integer parameters.
inline Generated generate(const std::string& family, const std::vector<int>& params = {}) {
    auto need = [&](size_t k) {
        if (params.size() != k)
            throw std::invalid_argument("family " + family + " expects " + std::to_string(k) + " parameter(s)");
    };
    if (family == "cube") { need(0); return generate_cube(); }
    if (family == "figure1") { need(0); return generate_figure1(); }
    if (family == "claw") { need(0); return generate_claw(); }
    if (family == "dodecahedron") { need(0); return generate_dodecahedron(); }
    if (family == "hypercube") { need(1); return generate_hypercube(params[0]); }
    if (family == "cycle") { need(1); return generate_cycle(params[0]); }
    if (family == "complete") { need(1); return generate_complete(params[0]); }
    if (family == "lattice_window") {
        if (params.empty()) throw std::invalid_argument("lattice_window expects dimensions");
        return generate_lattice_window(params);
    }
    throw std::invalid_argument("unknown family " + family);
}

} // namespace twistor
