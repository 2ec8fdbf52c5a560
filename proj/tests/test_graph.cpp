#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace twistor;

TEST_CASE("vertices are indexed in label order") {
    Graph g = build_graph({"b", "a", "c"}, {{"a", "b"}, {"b", "c"}});
    REQUIRE(g.n() == 3);
    CHECK(g.label(0) == "a");
    CHECK(g.label(1) == "b");
    CHECK(g.label(2) == "c");
    CHECK(g.index_of("c") == 2);
    CHECK(g.has_vertex("a"));
    CHECK_FALSE(g.has_vertex("d"));
}

TEST_CASE("edges are stored canonically and looked up either way") {
    Graph g = build_graph({"x", "y", "z"}, {{"y", "x"}, {"z", "y"}});
    REQUIRE(g.m() == 2);
    CHECK(g.has_edge("x", "y"));
    CHECK(g.has_edge("y", "x"));
    CHECK_FALSE(g.has_edge("x", "z"));
    Edge e("y", "x");
    CHECK(e.u == "x");
    CHECK(e.v == "y");
    CHECK(e.name() == "x-y");
    CHECK(g.edge_index(e) >= 0);
    CHECK(g.edges()[g.edge_index(e)] == e);
}

TEST_CASE("duplicate vertices and edges are rejected") {
    CHECK_THROWS_AS(build_graph({"a", "a"}, {}), std::invalid_argument);
    CHECK_THROWS_AS(build_graph({"a", "b"}, {{"a", "b"}, {"b", "a"}}), std::invalid_argument);
    CHECK_THROWS_AS(build_graph({"a"}, {{"a", "a"}}), std::invalid_argument);
    CHECK_THROWS_AS(build_graph({"a"}, {{"a", "b"}}), std::invalid_argument);
}

TEST_CASE("neighbor lists are sorted by index") {
    Graph g = build_graph({"a", "b", "c", "d"}, {{"d", "a"}, {"a", "c"}, {"a", "b"}});
    const auto& nb = g.neighbors(0);
    REQUIRE(nb.size() == 3);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    CHECK(g.degree(0) == 3);
    CHECK(g.degree("b") == 1);
}

TEST_CASE("regularity and connectivity checks") {
    Graph cube = generate_cube().graph;
    CHECK(cube.is_regular(3));
    CHECK_FALSE(cube.is_regular(2));
    CHECK(cube.connected());

    Graph two = build_graph({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}});
    CHECK_FALSE(two.connected());
    CHECK(two.is_regular(1));
}

TEST_CASE("hypercube generator produces the n-dimensional skeleton") {
    for (int n = 1; n <= 5; ++n) {
        Graph g = generate_hypercube(n).graph;
        CHECK(g.n() == (1 << n));
        CHECK(g.m() == n * (1 << (n - 1)));
        CHECK(g.is_regular(n));
        CHECK(g.connected());
    }
    CHECK_THROWS_AS(generate_hypercube(0), std::invalid_argument);
    CHECK_THROWS_AS(generate_hypercube(13), std::invalid_argument);
}

TEST_CASE("cycle and complete generators") {
    Graph c5 = generate_cycle(5).graph;
    CHECK(c5.n() == 5);
    CHECK(c5.m() == 5);
    CHECK(c5.is_regular(2));
    CHECK_THROWS_AS(generate_cycle(2), std::invalid_argument);

    Graph k4 = generate_complete(4).graph;
    CHECK(k4.n() == 4);
    CHECK(k4.m() == 6);
    CHECK(k4.is_regular(3));
}

TEST_CASE("claw and dodecahedron generators") {
    Graph claw = generate_claw().graph;
    CHECK(claw.n() == 4);
    CHECK(claw.m() == 3);
    CHECK(claw.degree("0") == 3);

    Graph d = generate_dodecahedron().graph;
    CHECK(d.n() == 20);
    CHECK(d.m() == 30);
    CHECK(d.is_regular(3));
    CHECK(d.connected());
}

TEST_CASE("figure1 generator carries exact and floating values") {
    Generated gen = generate_figure1();
    CHECK(gen.graph.n() == 8);
    CHECK(gen.graph.m() == 12);
    REQUIRE(gen.exact_values.has_value());
    REQUIRE(gen.values.has_value());
    for (int i = 0; i < 8; ++i) {
        Complex f = (*gen.values)[i];
        Complex e = (*gen.exact_values)[i].to_complex();
        CHECK(f == e);
    }
}

TEST_CASE("family dispatch maps names and parameters") {
    CHECK(generate("cube").graph.n() == 8);
    CHECK(generate("cycle", {6}).graph.n() == 6);
    CHECK(generate("complete", {5}).graph.m() == 10);
    CHECK(generate("hypercube", {4}).graph.n() == 16);
    CHECK(generate("lattice_window", {3, 4}).graph.n() == 12);
    CHECK_THROWS_AS(generate("moebius"), std::invalid_argument);
    CHECK_THROWS_AS(generate("cycle", {}), std::invalid_argument);
}

TEST_CASE("lattice window is the box grid") {
    Graph g = generate_lattice_window({3, 4}).graph;
    CHECK(g.n() == 12);
    // 2*(3-1)*4 + ... horizontal: (3-1)*4 = 8, vertical: 3*(4-1) = 9
    CHECK(g.m() == 17);
    CHECK(g.has_vertex("0,0"));
    CHECK(g.has_vertex("2,3"));
    CHECK(g.has_edge("0,0", "1,0"));
    CHECK(g.has_edge("0,0", "0,1"));
    CHECK_FALSE(g.has_edge("0,0", "1,1"));
}

TEST_CASE("isomorphism testing agrees on relabelings and rejects non-isomorphic pairs") {
    Graph a = generate_cycle(6).graph;
    Graph b = build_graph({"p", "q", "r", "s", "t", "u"},
                          {{"p", "r"}, {"r", "t"}, {"t", "q"}, {"q", "s"}, {"s", "u"}, {"u", "p"}});
    CHECK(isomorphic(a, b));

    Graph c6 = generate_cycle(6).graph;
    Graph two_triangles = build_graph({"a", "b", "c", "d", "e", "f"},
                                      {{"a", "b"}, {"b", "c"}, {"c", "a"},
                                       {"d", "e"}, {"e", "f"}, {"f", "d"}});
    CHECK_FALSE(isomorphic(c6, two_triangles));
    CHECK_FALSE(isomorphic(generate_cycle(5).graph, generate_cycle(6).graph));
}

TEST_CASE("automorphism groups have the expected order") {
    CHECK(automorphisms(generate_cycle(4).graph).size() == 8);
    CHECK(automorphisms(generate_complete(4).graph).size() == 24);
    CHECK(automorphisms(generate_cube().graph).size() == 48);
    CHECK(automorphisms(generate_claw().graph).size() == 6);
}
