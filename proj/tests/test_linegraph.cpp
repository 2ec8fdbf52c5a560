#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace twistor;

TEST_CASE("line graph vertices are root edges, adjacent when incident") {
    Graph p3 = build_graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    auto [L, corr] = line_graph(p3);
    CHECK(L.n() == 2);
    CHECK(L.m() == 1);
    CHECK(L.has_vertex("a-b"));
    CHECK(L.has_vertex("b-c"));
    CHECK(L.has_edge("a-b", "b-c"));
    REQUIRE(corr.edge_to_vertex.size() == 2);
    CHECK(corr.clique_of.at("b") == std::vector<std::string>{"a-b", "b-c"});
    CHECK(corr.clique_of.at("a") == std::vector<std::string>{"a-b"});
}

TEST_CASE("triangle and claw share the same line graph") {
    auto [lk3, c1] = line_graph(generate_complete(3).graph);
    auto [lclaw, c2] = line_graph(generate_claw().graph);
    CHECK(isomorphic(lk3, generate_complete(3).graph));
    CHECK(isomorphic(lclaw, generate_complete(3).graph));
}

TEST_CASE("line graph size follows the degree formula") {
    CounterRng rng(31, 8);
    for (int t = 0; t < 50; ++t) {
        Graph g = testutil::random_connected_graph(rng, 3 + int(rng.next_u64() % 10), 0.25);
        auto [L, corr] = line_graph(g);
        CHECK(L.n() == g.m());
        long expected = 0;
        for (int x = 0; x < g.n(); ++x) expected += g.degree(x) * (g.degree(x) - 1) / 2;
        CHECK(L.m() == expected);
        // vertex cliques have root-degree size
        for (int x = 0; x < g.n(); ++x)
            CHECK(int(corr.clique_of.at(g.label(x)).size()) == g.degree(x));
    }
}

TEST_CASE("claw is not a line graph") {
    CHECK_FALSE(recognize_line_graph(generate_claw().graph).has_value());
}

TEST_CASE("triangle recognition returns one of its two roots") {
    Graph k3 = generate_complete(3).graph;
    auto rec = recognize_line_graph(k3);
    REQUIRE(rec.has_value());
    bool is_k3 = isomorphic(rec->root, generate_complete(3).graph);
    bool is_claw = isomorphic(rec->root, generate_claw().graph);
    CHECK((is_k3 || is_claw));
}

TEST_CASE("recognition inverts line graph construction on stock graphs") {
    std::vector<Graph> roots = {generate_cycle(5).graph, generate_complete(4).graph,
                                generate_cube().graph, generate_figure1().graph,
                                generate_claw().graph};
    for (const Graph& g : roots) {
        auto [L, corr] = line_graph(g);
        auto rec = recognize_line_graph(L);
        REQUIRE(rec.has_value());
        if (isomorphic(g, generate_claw().graph)) {
            // L(K_{1,3}) = K3 = L(K3): either root is a correct answer
            CHECK((isomorphic(rec->root, g) ||
                   isomorphic(rec->root, generate_complete(3).graph)));
        } else {
            CHECK(isomorphic(rec->root, g));
        }
        // edge-to-vertex correspondence must be a bijection onto L's vertices
        std::set<std::string> seen(rec->corr.edge_to_vertex.begin(),
                                   rec->corr.edge_to_vertex.end());
        CHECK(int(seen.size()) == L.n());
        for (const auto& lbl : seen) CHECK(L.has_vertex(lbl));
    }
}

TEST_CASE("a wheel-like graph with too many cliques at a vertex is rejected") {
    // K5 minus a perfect matching cannot happen at n=5; use K_{1,4} instead,
    // whose center would need four clique homes
    Graph star = build_graph({"c", "l1", "l2", "l3", "l4"},
                             {{"c", "l1"}, {"c", "l2"}, {"c", "l3"}, {"c", "l4"}});
    CHECK_FALSE(recognize_line_graph(star).has_value());
}

TEST_CASE("the vertex cap aborts oversized recognition calls") {
    Graph big = generate_dodecahedron().graph;
    CHECK_THROWS_AS(recognize_line_graph(big, 10), std::length_error);
}

TEST_CASE("line graphs of cycles are cycles") {
    for (int n : {3, 4, 5, 6, 7}) {
        auto [L, corr] = line_graph(generate_cycle(n).graph);
        CHECK(isomorphic(L, generate_cycle(n).graph));
    }
}
