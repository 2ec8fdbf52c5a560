#pragma once

#include "twistor/calculus.hpp"
#include "twistor/graph.hpp"
#include "twistor/linegraph.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistor {

// psi on the line graph from a 1-form on the root: psi(X) = w on X's
// canonical direction (lexicographically smaller endpoint first). Clique
// residuals involve only squares, so the convention choice is invisible to
// verify_clique_condition.
template <class C>
VertexFunction<C> dual_function(const Graph& root, const OneForm<C>& w, const Graph& line,
                                const LineGraphCorrespondence& corr) {
    if (static_cast<int>(w.values.size()) != root.m() ||
        static_cast<int>(corr.edge_to_vertex.size()) != root.m() || line.n() != root.m())
        throw std::invalid_argument("correspondence does not match the graphs");
    VertexFunction<C> psi(line.n());
    for (int e = 0; e < root.m(); ++e) psi[line.index_of(corr.edge_to_vertex[e])] = w.values[e];
    return psi;
}

template <class C>
struct CliqueConditionReport {
    std::vector<std::pair<std::string, C>> residuals;  // per root vertex, sorted by label
    bool pass = false;
    std::string worst_vertex;
    double worst_abs = 0.0;
};

// Sum of psi^2 over each vertex clique C_x; zero for every x exactly when
// psi comes from an isotropic form on the root.
template <class C>
CliqueConditionReport<C> verify_clique_condition(const Graph& line, const VertexFunction<C>& psi,
                                                 const LineGraphCorrespondence& corr,
                                                 double tol = 1e-9) {
    if (static_cast<int>(psi.size()) != line.n())
        throw std::invalid_argument("psi does not match the line graph");
    CliqueConditionReport<C> rep;
    rep.pass = true;
    for (const auto& [root_label, members] : corr.clique_of) {
        C s{};
        for (const std::string& lv : members) {
            C v = psi[line.index_of(lv)];
            s = s + v * v;
        }
        double a = scalar_abs(s);
        bool ok = is_exact_v<C> ? scalar_is_zero(s) : a < tol;
        if (!ok) rep.pass = false;
        if (rep.worst_vertex.empty() || a > rep.worst_abs) {
            rep.worst_vertex = root_label;
            rep.worst_abs = a;
        }
        rep.residuals.emplace_back(root_label, s);
    }
    return rep;
}

// Inverse of dual_function: read an isotropic form on the root off a
// clique-null function on the line graph. The root and correspondence are
// the caller's choice (K3 admits two).
template <class C>
OneForm<C> pull_back_dual(const Graph& line, const VertexFunction<C>& psi, const Graph& root,
                          const LineGraphCorrespondence& corr, double tol = 1e-9) {
    if (static_cast<int>(corr.edge_to_vertex.size()) != root.m() || line.n() != root.m())
        throw std::invalid_argument("correspondence does not match the graphs");
    auto rep = verify_clique_condition(line, psi, corr, tol);
    if (!rep.pass)
        throw std::domain_error("clique condition fails at " + rep.worst_vertex +
                                "; not the dual of an isotropic form");
    OneForm<C> w(root.m());
    for (int e = 0; e < root.m(); ++e) w.values[e] = psi[line.index_of(corr.edge_to_vertex[e])];
    return w;
}

} // namespace twistor
