#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistor {

namespace detail {

inline std::string zero_pad(int value, int width) {
    std::string s = std::to_string(value);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

inline int digits(int n) { return n < 10 ? 1 : 1 + digits(n / 10); }

} // namespace detail

// Undirected edge keyed by endpoint labels, smaller label first.
struct Edge {
    std::string u;
    std::string v;

    Edge(std::string a, std::string b) {
        if (a == b) throw std::invalid_argument("loop edge (" + a + "," + a + ")");
        if (b < a) std::swap(a, b);
        u = std::move(a);
        v = std::move(b);
    }
    friend bool operator<(const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    }
    friend bool operator==(const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }
    std::string name() const { return u + "-" + v; }
};

// Finite simple undirected graph over opaque string labels. Vertices and
// neighbor lists are kept sorted so every iteration order is deterministic.
class Graph {
public:
    Graph() = default;

    Graph(const std::vector<std::string>& vertices, const std::vector<std::pair<std::string, std::string>>& edges) {
        for (const auto& v : vertices) add_vertex(v);
        for (const auto& [a, b] : edges) add_edge(a, b);
    }

    void add_vertex(const std::string& label) {
        if (index_.count(label)) throw std::invalid_argument("duplicate vertex " + label);
        index_.emplace(label, 0);
        reindex();
    }

    void add_edge(const std::string& a, const std::string& b) {
        Edge e(a, b);
        if (!index_.count(e.u)) throw std::invalid_argument("edge endpoint not a vertex: " + e.u);
        if (!index_.count(e.v)) throw std::invalid_argument("edge endpoint not a vertex: " + e.v);
        if (edge_set_.count(e)) throw std::invalid_argument("duplicate edge " + e.name());
        edge_set_.insert(e);
        int iu = index_.at(e.u), iv = index_.at(e.v);
        auto& nu = adj_[iu];
        auto& nv = adj_[iv];
        nu.insert(std::lower_bound(nu.begin(), nu.end(), iv), iv);
        nv.insert(std::lower_bound(nv.begin(), nv.end(), iu), iu);
        edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e), e);
    }

    int n() const { return static_cast<int>(labels_.size()); }
    int m() const { return static_cast<int>(edges_.size()); }

    const std::vector<std::string>& vertices() const { return labels_; }
    const std::vector<Edge>& edges() const { return edges_; }

    int index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw std::invalid_argument("unknown vertex " + label);
        return it->second;
    }
    bool has_vertex(const std::string& label) const { return index_.count(label) != 0; }
    const std::string& label(int i) const { return labels_.at(i); }

    const std::vector<int>& neighbors(int i) const { return adj_.at(i); }
    const std::vector<int>& neighbors(const std::string& label) const { return adj_.at(index_of(label)); }

    int degree(int i) const { return static_cast<int>(adj_.at(i).size()); }
    int degree(const std::string& label) const { return degree(index_of(label)); }

    bool has_edge(const std::string& a, const std::string& b) const { return edge_set_.count(Edge(a, b)) != 0; }
    bool has_edge(int i, int j) const {
        const auto& nb = adj_.at(i);
        return std::binary_search(nb.begin(), nb.end(), j);
    }

    int edge_index(const Edge& e) const {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || !(*it == e)) throw std::invalid_argument("unknown edge " + e.name());
        return static_cast<int>(it - edges_.begin());
    }

    bool is_regular(int k) const {
        for (int i = 0; i < n(); ++i)
            if (degree(i) != k) return false;
        return true;
    }

    bool connected() const {
        if (n() == 0) return true;
        std::vector<char> seen(n(), 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        int count = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : adj_[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    ++count;
                    q.push(y);
                }
        }
        return count == n();
    }

private:
    void reindex() {
        labels_.clear();
        labels_.reserve(index_.size());
        for (const auto& [l, _] : index_) labels_.push_back(l);
        // std::map iterates in sorted label order already
        std::map<std::string, int> fresh;
        std::vector<std::vector<int>> adj(labels_.size());
        for (size_t i = 0; i < labels_.size(); ++i) fresh[labels_[i]] = static_cast<int>(i);
        for (const auto& e : edge_set_) {
            adj[fresh[e.u]].push_back(fresh[e.v]);
            adj[fresh[e.v]].push_back(fresh[e.u]);
        }
        for (auto& nb : adj) std::sort(nb.begin(), nb.end());
        index_ = std::move(fresh);
        adj_ = std::move(adj);
    }

    std::map<std::string, int> index_;
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> adj_;
    std::set<Edge> edge_set_;
    std::vector<Edge> edges_;
};

inline Graph build_graph(const std::vector<std::string>& vertices,
                         const std::vector<std::pair<std::string, std::string>>& edges) {
    return Graph(vertices, edges);
}

} // namespace twistor
