#pragma once

#include "twistor/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

namespace twistor {

// Backtracking isomorphism search with degree pruning. Intended for test-size
// graphs (the callers stay at or below a dozen vertices).
//
// visit receives the mapping as a vector: image[i] = index in b of vertex i of
// a. Return true from visit to stop the enumeration early.
inline bool for_each_isomorphism(const Graph& a, const Graph& b,
                                 const std::function<bool(const std::vector<int>&)>& visit) {
    if (a.n() != b.n() || a.m() != b.m()) return false;
    int n = a.n();
    std::vector<int> da(n), db(n);
    for (int i = 0; i < n; ++i) da[i] = a.degree(i);
    for (int i = 0; i < n; ++i) db[i] = b.degree(i);
    {
        std::vector<int> sa = da, sb = db;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }
    // order a's vertices: highest degree first to fail fast
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return da[i] != da[j] ? da[i] > da[j] : i < j;
    });
    std::vector<int> image(n, -1), used(n, 0);
    bool stopped = false;
    std::function<bool(int)> rec = [&](int k) -> bool {
        if (k == n) return visit(image);
        int x = order[k];
        for (int y = 0; y < n; ++y) {
            if (used[y] || db[y] != da[x]) continue;
            bool ok = true;
            for (int j = 0; j < k && ok; ++j) {
                int x2 = order[j];
                if (a.has_edge(x, x2) != b.has_edge(y, image[x2])) ok = false;
            }
            if (!ok) continue;
            image[x] = y;
            used[y] = 1;
            if (rec(k + 1)) {
                stopped = true;
                return true;
            }
            used[y] = 0;
            image[x] = -1;
        }
        return false;
    };
    rec(0);
    return stopped;
}

inline bool isomorphic(const Graph& a, const Graph& b) {
    return for_each_isomorphism(a, b, [](const std::vector<int>&) { return true; });
}

// All automorphisms of g, as index permutations.
inline std::vector<std::vector<int>> automorphisms(const Graph& g) {
    std::vector<std::vector<int>> out;
    for_each_isomorphism(g, g, [&](const std::vector<int>& im) {
        out.push_back(im);
        return false;
    });
    return out;
}

} // namespace twistor
