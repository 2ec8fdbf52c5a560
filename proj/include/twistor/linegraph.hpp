#pragma once

#include "twistor/graph.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace twistor {

// Bijection between the edges of a root graph and the vertices of its line
// graph, together with the per-root-vertex cliques C_x.
struct LineGraphCorrespondence {
    std::vector<std::string> edge_to_vertex;                // root edge index -> line vertex label
    std::map<std::string, std::vector<std::string>> clique_of;  // root vertex label -> line vertex labels
};

// L has one vertex per edge of g, labeled "u-v" with u < v; two line vertices
// are adjacent iff the edges share an endpoint.
inline std::pair<Graph, LineGraphCorrespondence> line_graph(const Graph& g) {
    LineGraphCorrespondence corr;
    std::vector<std::string> vs;
    for (int e = 0; e < g.m(); ++e) {
        vs.push_back(g.edges()[e].name());
        corr.edge_to_vertex.push_back(vs.back());
    }
    std::vector<std::pair<std::string, std::string>> es;
    for (int x = 0; x < g.n(); ++x) {
        const auto& nb = g.neighbors(x);
        std::vector<std::string> clique;
        for (int y : nb) clique.push_back(Edge(g.label(x), g.label(y)).name());
        std::sort(clique.begin(), clique.end());
        for (size_t i = 0; i < clique.size(); ++i)
            for (size_t j = i + 1; j < clique.size(); ++j) es.emplace_back(clique[i], clique[j]);
        corr.clique_of[g.label(x)] = std::move(clique);
    }
    // edges meeting at both endpoints of a shared edge would repeat; dedupe
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    return {build_graph(vs, es), std::move(corr)};
}

struct RootGraphResult {
    Graph root;
    LineGraphCorrespondence corr;
};

namespace detail {

// Krausz partition search state: cover E(L) by cliques with every vertex of L
// in at most two of them. Candidate cliques for the first uncovered edge are
// tried smallest first, then lexicographically by sorted vertex set.
struct KrauszSearch {
    const Graph& L;
    std::vector<std::vector<char>> covered;  // adjacency matrix of covered edges
    std::vector<int> clique_count;
    std::vector<std::vector<int>> cliques;

    explicit KrauszSearch(const Graph& g)
        : L(g), covered(g.n(), std::vector<char>(g.n(), 0)), clique_count(g.n(), 0) {}

    bool solve() { return extend(); }

    bool extend() {
        int u = -1, v = -1;
        for (int x = 0; x < L.n() && u < 0; ++x)
            for (int y : L.neighbors(x)) {
                if (y > x && !covered[x][y]) {
                    u = x;
                    v = y;
                    break;
                }
            }
        if (u < 0) return true;  // every edge covered
        if (clique_count[u] >= 2 || clique_count[v] >= 2) return false;
        // vertices that could join a clique through edge (u,v)
        std::vector<int> cand;
        for (int z : L.neighbors(u)) {
            if (z == v || clique_count[z] >= 2) continue;
            if (L.has_edge(z, v) && !covered[std::min(z, u)][std::max(z, u)] &&
                !covered[std::min(z, v)][std::max(z, v)])
                cand.push_back(z);
        }
        std::vector<int> subset;
        return try_subsets(u, v, cand, 0, subset);
    }

    // enumerate subsets of cand by increasing size via sizes loop
    bool try_subsets(int u, int v, const std::vector<int>& cand, int, std::vector<int>&) {
        int k = static_cast<int>(cand.size());
        for (int size = 0; size <= k; ++size) {
            std::vector<int> pick;
            if (choose(u, v, cand, 0, size, pick)) return true;
        }
        return false;
    }

    bool choose(int u, int v, const std::vector<int>& cand, int from, int remaining,
                std::vector<int>& pick) {
        if (remaining == 0) return attempt(u, v, pick);
        for (int i = from; i <= static_cast<int>(cand.size()) - remaining; ++i) {
            // all chosen vertices must be pairwise adjacent with uncovered edges
            bool ok = true;
            for (int z : pick) {
                int a = std::min(z, cand[i]), b = std::max(z, cand[i]);
                if (!L.has_edge(a, b) || covered[a][b]) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            pick.push_back(cand[i]);
            if (choose(u, v, cand, i + 1, remaining - 1, pick)) return true;
            pick.pop_back();
        }
        return false;
    }

    bool attempt(int u, int v, const std::vector<int>& pick) {
        std::vector<int> clique = {u, v};
        clique.insert(clique.end(), pick.begin(), pick.end());
        std::sort(clique.begin(), clique.end());
        for (int x : clique)
            if (clique_count[x] >= 2) return false;
        std::vector<std::pair<int, int>> marked;
        for (size_t i = 0; i < clique.size(); ++i)
            for (size_t j = i + 1; j < clique.size(); ++j) {
                covered[clique[i]][clique[j]] = covered[clique[j]][clique[i]] = 1;
                marked.emplace_back(clique[i], clique[j]);
            }
        for (int x : clique) ++clique_count[x];
        cliques.push_back(clique);
        if (extend()) return true;
        cliques.pop_back();
        for (int x : clique) --clique_count[x];
        for (auto& [a, b] : marked) covered[a][b] = covered[b][a] = 0;
        return false;
    }
};

} // namespace detail

// Krausz clique-partition recognition. Returns the root graph and the
// correspondence when L is a line graph, std::nullopt otherwise. The clique
// enumeration order is deterministic, so for L = K3 the three-K2 partition is
// found first and the returned root is the triangle (K_{1,3} is the other
// valid root of that one exceptional input).
inline std::optional<RootGraphResult> recognize_line_graph(const Graph& L, int vertex_cap = 64) {
    if (!L.connected()) throw std::invalid_argument("recognize_line_graph requires a connected graph");
    if (L.n() > vertex_cap)
        throw std::length_error("recognize_line_graph: vertex cap " + std::to_string(vertex_cap) + " exceeded");
    if (L.n() == 0) return std::nullopt;
    detail::KrauszSearch search(L);
    if (!search.solve()) return std::nullopt;

    // isolated line vertices (no incident edges) form their own clique
    std::vector<int> clique_home_count(L.n(), 0);
    for (const auto& c : search.cliques)
        for (int x : c) ++clique_home_count[x];
    std::vector<std::vector<int>> cliques = search.cliques;
    for (int x = 0; x < L.n(); ++x)
        if (L.degree(x) == 0) {
            cliques.push_back({x});
            ++clique_home_count[x];
        }
    // every line vertex must end up in exactly two cliques; add singletons
    for (int x = 0; x < L.n(); ++x) {
        if (clique_home_count[x] == 1) cliques.push_back({x});
        if (clique_home_count[x] > 2) return std::nullopt;  // cannot happen, guarded in search
    }

    int width = detail::digits(static_cast<int>(cliques.size()) - 1);
    std::vector<std::string> root_vs;
    for (size_t q = 0; q < cliques.size(); ++q)
        root_vs.push_back("q" + detail::zero_pad(static_cast<int>(q), width));
    std::vector<std::vector<int>> homes(L.n());
    for (size_t q = 0; q < cliques.size(); ++q)
        for (int x : cliques[q]) homes[x].push_back(static_cast<int>(q));
    std::vector<std::pair<std::string, std::string>> root_es;
    for (int x = 0; x < L.n(); ++x) {
        if (homes[x].size() != 2) return std::nullopt;
        root_es.emplace_back(root_vs[homes[x][0]], root_vs[homes[x][1]]);
    }
    RootGraphResult res;
    res.root = build_graph(root_vs, root_es);
    res.corr.edge_to_vertex.resize(res.root.m());
    for (int x = 0; x < L.n(); ++x) {
        Edge e(root_vs[homes[x][0]], root_vs[homes[x][1]]);
        res.corr.edge_to_vertex[res.root.edge_index(e)] = L.label(x);
    }
    for (size_t q = 0; q < cliques.size(); ++q) {
        std::vector<std::string> members;
        for (int x : cliques[q]) members.push_back(L.label(x));
        std::sort(members.begin(), members.end());
        res.corr.clique_of[root_vs[q]] = std::move(members);
    }
    return res;
}

} // namespace twistor
