#include <random>

#include "doctest.h"
#include "gstp/families.hpp"
#include "gstp/fracture.hpp"
#include "gstp/oracle.hpp"
#include "testutil.hpp"

using namespace gstp;

TEST_CASE("fracture_deletion fixtures") {
    SUBCASE("P5 has no (1,1) deletion set") {
        CHECK(!fracture_deletion(path_graph(5), {1, 1}));
    }
    SUBCASE("two disjoint P5s have a (2,2) set: the centers") {
        Graph g(10);
        for (int i = 0; i + 1 < 5; ++i) {
            g.add_edge(i, i + 1);
            g.add_edge(5 + i, 5 + i + 1);
        }
        auto s = fracture_deletion(g, {2, 2});
        REQUIRE(s);
        CHECK(*s == std::vector<Vertex>{2, 7});
    }
    SUBCASE("single vertex, d = 0") {
        auto s = fracture_deletion(Graph(1), {1, 0});
        REQUIRE(s);
        CHECK(s->empty());
    }
}

TEST_CASE("fracture_deletion agrees with exhaustive subset search") {
    std::mt19937_64 rng(43);
    for (int it = 0; it < 60; ++it) {
        Graph g = random_graph(8, 12, rng());
        int n = g.vertex_count();
        for (int k = 0; k <= n; ++k)
            for (int d = 0; d <= n; ++d) {
                bool brute = testutil::brute_fracture(g, k, d);
                auto fast = fracture_deletion(g, {k, d});
                CHECK(brute == fast.has_value());
                if (fast) CHECK(is_fracture_deletion_set(g, *fast, k));
            }
    }
}

TEST_CASE("fracture_modulator") {
    SUBCASE("P5 needs two vertices") {
        auto [s, k] = fracture_modulator(path_graph(5));
        CHECK(k == 2);
        CHECK(is_fracture_deletion_set(path_graph(5), s, 2));
    }
    SUBCASE("K1") {
        auto [s, k] = fracture_modulator(Graph(1));
        CHECK(k == 1);
    }
    SUBCASE("windmill W2 by exhaustive check") {
        Graph w = windmill(2);
        // no single vertex works, some pair does
        CHECK(!testutil::brute_fracture(w, 1, 1));
        CHECK(testutil::brute_fracture(w, 2, 2));
        auto [s, k] = fracture_modulator(w);
        CHECK(k == 2);
    }
    SUBCASE("size monotone under edge addition") {
        std::mt19937_64 rng(47);
        for (int it = 0; it < 25; ++it) {
            Graph g = random_graph(7, 8, rng());
            if (g.vertex_count() < 2) continue;
            auto [s1, k1] = fracture_modulator(g);
            Graph h = g;
            bool added = false;
            for (int u = 0; u < g.vertex_count() && !added; ++u)
                for (int v = u + 1; v < g.vertex_count() && !added; ++v)
                    if (!h.has_edge(u, v)) {
                        h.add_edge(u, v);
                        added = true;
                    }
            if (!added) continue;
            auto [s2, k2] = fracture_modulator(h);
            CHECK(k2 >= k1);
        }
    }
}

TEST_CASE("make_nice_modulator") {
    SUBCASE("already nice is unchanged") {
        // path u - a - v with terminal {u, v}: X = {a, aug(T)} is nice
        GstpInstance inst = from_stp(path_graph(3), {0, 2}, 1);
        std::vector<Vertex> x{1, 3};  // a and the augmented vertex
        REQUIRE(is_nice_modulator(inst, x));
        auto r = make_nice_modulator(inst, x);
        CHECK(r.modulator == x);
        CHECK(r.instance.graph() == inst.graph());
        CHECK(solve_exact(r.instance).status == solve_exact(inst).status);
    }
    SUBCASE("modulator edges get subdivided") {
        // modulator {0, 1} with edge 0-1 inside the host graph
        GstpInstance inst = from_stp(path_graph(2), {0, 1}, 1);
        std::vector<Vertex> x{0, 1};
        auto r = make_nice_modulator(inst, x);
        CHECK(!r.instance.graph().has_edge(0, 1));
        std::string why;
        CHECK(is_nice_modulator(r.instance, r.modulator, &why));
        CHECK(solve_exact(r.instance).status == solve_exact(inst).status);
    }
    SUBCASE("decision preserved and |S| <= 2|X| on random instances") {
        std::mt19937_64 rng(53);
        int done = 0;
        for (int it = 0; it < 120 && done < 40; ++it) {
            RandomInstanceParams p;
            p.max_vertices = 6;
            p.max_edges = 8;
            GstpInstance inst = random_instance(p, rng());
            if (inst.terminal_count() == 0) continue;
            AugmentedGraph aug = augment(inst, AugmentMode::Vertex);
            std::optional<std::vector<Vertex>> x;
            for (int k = 1; k <= 4 && !x; ++k) x = fracture_deletion(aug.graph, {k, k});
            if (!x) continue;
            auto r = make_nice_modulator(inst, *x);
            ++done;
            CHECK(r.modulator.size() <= 2 * x->size());
            std::string why;
            CHECK(is_nice_modulator(r.instance, r.modulator, &why));
            auto before = solve_exact(inst);
            auto after = solve_exact(r.instance);
            if (before.status != OracleStatus::BudgetExceeded &&
                after.status != OracleStatus::BudgetExceeded)
                CHECK(before.status == after.status);
        }
        CHECK(done >= 20);
    }
    SUBCASE("rejects non-modulators") {
        GstpInstance inst = from_stp(path_graph(5), {0, 4}, 1);
        CHECK_THROWS(make_nice_modulator(inst, {0}));
    }
}
