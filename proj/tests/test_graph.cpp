#include <random>

#include "doctest.h"
#include "gstp/families.hpp"
#include "gstp/graph.hpp"
#include "testutil.hpp"

using namespace gstp;

TEST_CASE("components") {
    CHECK(testutil::two_disjoint_edges().components() ==
          std::vector<std::vector<Vertex>>{{0, 1}, {2, 3}});
    CHECK(Graph(0).components().empty());
    CHECK(windmill(3).components().size() == 1);
    CHECK(windmill(3).components()[0].size() == 7);
}

TEST_CASE("cut_edges") {
    Graph p3 = path_graph(3);
    auto cut = p3.cut_edges({1});
    REQUIRE(cut.size() == 2);
    CHECK(cut[0].e == Edge(0, 1));
    CHECK(cut[1].e == Edge(1, 2));
    std::vector<Vertex> all{0, 1, 2};
    CHECK(p3.cut_edges(all).empty());
}

TEST_CASE("cut symmetry |cut(S)| == |cut(V-S)|") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 50; ++it) {
        Graph g = random_graph(7, 12, rng());
        int n = g.vertex_count();
        std::vector<Vertex> s, rest;
        for (Vertex v = 0; v < n; ++v) (rng() % 2 ? s : rest).push_back(v);
        CHECK(g.cut_edges(s).size() == g.cut_edges(rest).size());
    }
}

TEST_CASE("contract") {
    Graph tri = complete_graph(3);
    SUBCASE("multiplicity mode keeps parallels") {
        auto r = tri.contract({0, 1}, true);
        CHECK(r.graph.vertex_count() == 2);
        CHECK(r.graph.edge_count() == 2);
        CHECK(r.graph.multiplicity(r.representative, r.vmap.at(2)) == 2);
    }
    SUBCASE("simple mode simplifies") {
        auto r = tri.contract({0, 1}, false);
        CHECK(r.graph.vertex_count() == 2);
        CHECK(r.graph.edge_count() == 1);
    }
    SUBCASE("star leaves contract to doubled spokes") {
        Graph s4 = star(4);
        auto r = s4.contract({1, 2, 3, 4}, true);
        CHECK(r.graph.vertex_count() == 2);
        CHECK(r.graph.edge_count() == 4);
    }
    SUBCASE("vertex count drops by |s|-1") {
        std::mt19937_64 rng(3);
        for (int it = 0; it < 30; ++it) {
            Graph g = random_graph(8, 12, rng());
            if (g.vertex_count() < 2) continue;
            int k = 2 + static_cast<int>(rng() % (g.vertex_count() - 1));
            std::vector<Vertex> s;
            for (int v = 0; v < k; ++v) s.push_back(v);
            auto r = g.contract(s, true);
            CHECK(r.graph.vertex_count() == g.vertex_count() - k + 1);
        }
    }
}

TEST_CASE("suppress") {
    SUBCASE("path middle") {
        auto r = path_graph(3).suppress(1);
        CHECK(r.graph.vertex_count() == 2);
        CHECK(r.graph.has_edge(0, 1));
    }
    SUBCASE("double edge to one neighbor leaves no loop") {
        Graph g(2, true);
        g.add_edge(0, 1, 2);
        auto r = g.suppress(1);
        CHECK(r.graph.vertex_count() == 1);
        CHECK(r.graph.edge_count() == 0);
    }
    SUBCASE("pendant removed") {
        auto r = path_graph(2).suppress(1);
        CHECK(r.graph.vertex_count() == 1);
        CHECK(r.graph.edge_count() == 0);
    }
    SUBCASE("degree three errors") {
        CHECK_THROWS(star(3).suppress(0));
    }
    SUBCASE("other degrees preserved") {
        Graph g = cycle_graph(5);
        auto r = g.suppress(2);
        for (Vertex v = 0; v < 5; ++v) {
            if (v == 2) continue;
            CHECK(r.graph.degree(r.vmap.at(v)) == g.degree(v));
        }
    }
}

TEST_CASE("subdivide") {
    SUBCASE("K2 becomes P3") {
        auto r = path_graph(2).subdivide(Edge(0, 1));
        CHECK(r.graph.vertex_count() == 3);
        CHECK(r.graph.has_edge(0, r.new_vertex));
        CHECK(r.graph.has_edge(1, r.new_vertex));
        CHECK(!r.graph.has_edge(0, 1));
    }
    SUBCASE("triangle becomes C4") {
        auto r = complete_graph(3).subdivide(Edge(0, 1));
        CHECK(r.graph.vertex_count() == 4);
        CHECK(r.graph.edge_count() == 4);
    }
    SUBCASE("one copy of a double edge") {
        Graph g(2, true);
        g.add_edge(0, 1, 2);
        auto r = g.subdivide(Edge(0, 1));
        CHECK(r.graph.multiplicity(0, 1) == 1);
        CHECK(r.graph.degree(r.new_vertex) == 2);
    }
    SUBCASE("missing edge errors") {
        CHECK_THROWS(path_graph(3).subdivide(Edge(0, 2)));
    }
}

TEST_CASE("components partition the vertex set") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 50; ++it) {
        Graph g = random_graph(8, 10, rng());
        std::vector<char> seen(g.vertex_count(), 0);
        for (const auto& c : g.components())
            for (Vertex v : c) {
                CHECK(!seen[v]);
                seen[v] = 1;
            }
        for (Vertex v = 0; v < g.vertex_count(); ++v) CHECK(seen[v]);
    }
}

TEST_CASE("fen identity matches brute force on small graphs") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 40; ++it) {
        Graph g = random_graph(6, 8, rng());
        int formula = g.edge_count() - g.vertex_count() + static_cast<int>(g.components().size());
        CHECK(formula == testutil::brute_fen(g));
    }
}
