#pragma once

#include "twistor/graph.hpp"

#include <vector>

namespace twistor {

// Closed walk given as a cyclic list of directed edges (from, to); the arrival
// vertex of step k is the departure vertex of step k+1, cyclically.
struct Cycle {
    std::vector<std::pair<int, int>> steps;
};

struct CycleBasis {
    std::vector<Cycle> cycles;
};

struct SpanningForest {
    std::vector<int> parent;       // -1 at roots
    std::vector<int> depth;
    std::vector<char> tree_edge;   // per edge index
};

// BFS forest; each component is rooted at its smallest vertex index, and
// neighbors are scanned in sorted order, so the forest is deterministic.
inline SpanningForest spanning_forest(const Graph& g, int first_root = 0) {
    SpanningForest f;
    f.parent.assign(g.n(), -2);
    f.depth.assign(g.n(), 0);
    f.tree_edge.assign(g.m(), 0);
    if (g.n() == 0) return f;
    for (int s = 0; s < g.n(); ++s) {
        int root = (s + first_root) % g.n();
        if (f.parent[root] != -2) continue;
        f.parent[root] = -1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : g.neighbors(x)) {
                if (f.parent[y] != -2) continue;
                f.parent[y] = x;
                f.depth[y] = f.depth[x] + 1;
                f.tree_edge[g.edge_index(Edge(g.label(x), g.label(y)))] = 1;
                q.push(y);
            }
        }
    }
    return f;
}

// Fundamental cycles of the BFS forest: one per non-tree edge (x,y), walking
// x -> y along the chord, then y up and x down the tree through the meet point.
inline CycleBasis cycle_basis(const Graph& g, int first_root = 0) {
    SpanningForest f = spanning_forest(g, first_root);
    CycleBasis basis;
    for (int e = 0; e < g.m(); ++e) {
        if (f.tree_edge[e]) continue;
        int x = g.index_of(g.edges()[e].u);
        int y = g.index_of(g.edges()[e].v);
        std::vector<int> up_y, up_x;
        int a = y, b = x;
        while (a != b) {
            if (f.depth[a] >= f.depth[b]) {
                up_y.push_back(a);
                a = f.parent[a];
            } else {
                up_x.push_back(b);
                b = f.parent[b];
            }
        }
        Cycle c;
        c.steps.emplace_back(x, y);
        int prev = y;
        for (size_t i = 1; i < up_y.size(); ++i) {
            c.steps.emplace_back(prev, up_y[i]);
            prev = up_y[i];
        }
        if (prev != a) {
            c.steps.emplace_back(prev, a);
            prev = a;
        }
        for (auto it = up_x.rbegin(); it != up_x.rend(); ++it) {
            c.steps.emplace_back(prev, *it);
            prev = *it;
        }
        basis.cycles.push_back(std::move(c));
    }
    return basis;
}

} // namespace twistor
