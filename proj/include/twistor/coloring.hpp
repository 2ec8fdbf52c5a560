#pragma once

#include "twistor/graph.hpp"

#include <optional>
#include <vector>

namespace twistor {

// Proper edge coloring: colors 1..m, one per edge index, no two edges at a
// common vertex sharing a color. color[e] == 0 means uncolored.
struct EdgeColoring {
    std::vector<int> color;
    int num_colors = 0;
};

inline bool is_proper_coloring(const Graph& g, const EdgeColoring& c) {
    if (static_cast<int>(c.color.size()) != g.m()) return false;
    for (int e = 0; e < g.m(); ++e)
        if (c.color[e] < 1 || c.color[e] > c.num_colors) return false;
    for (int x = 0; x < g.n(); ++x) {
        std::vector<char> seen(c.num_colors + 1, 0);
        for (int y : g.neighbors(x)) {
            int e = g.edge_index(Edge(g.label(x), g.label(y)));
            if (seen[c.color[e]]) return false;
            seen[c.color[e]] = 1;
        }
    }
    return true;
}

// Deterministic backtracking over edges in index order, colors ascending.
inline std::optional<EdgeColoring> proper_edge_coloring(const Graph& g, int m) {
    for (int x = 0; x < g.n(); ++x)
        if (g.degree(x) > m) return std::nullopt;
    EdgeColoring c;
    c.color.assign(g.m(), 0);
    c.num_colors = m;
    // used[x][k] = color k already present at vertex x
    std::vector<std::vector<char>> used(g.n(), std::vector<char>(m + 1, 0));
    std::vector<std::pair<int, int>> ends(g.m());
    for (int e = 0; e < g.m(); ++e)
        ends[e] = {g.index_of(g.edges()[e].u), g.index_of(g.edges()[e].v)};

    auto rec = [&](auto&& self, int e) -> bool {
        if (e == g.m()) return true;
        auto [u, v] = ends[e];
        for (int k = 1; k <= m; ++k) {
            if (used[u][k] || used[v][k]) continue;
            used[u][k] = used[v][k] = 1;
            c.color[e] = k;
            if (self(self, e + 1)) return true;
            used[u][k] = used[v][k] = 0;
            c.color[e] = 0;
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    return c;
}

// Brute force over all m^|E| assignments; only for tiny graphs, used to
// certify that a none-result really means no proper coloring exists.
inline bool proper_coloring_exists_exhaustive(const Graph& g, int m) {
    if (g.m() == 0) return true;
    std::vector<int> a(g.m(), 1);
    while (true) {
        EdgeColoring c{a, m};
        if (is_proper_coloring(g, c)) return true;
        int i = 0;
        while (i < g.m() && a[i] == m) a[i++] = 1;
        if (i == g.m()) return false;
        ++a[i];
    }
}

} // namespace twistor
