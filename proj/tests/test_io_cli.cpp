#include <random>
#include <sstream>

#include "doctest.h"
#include "gstp/families.hpp"
#include "gstp/io.hpp"
#include "gstp/tree_cut.hpp"
#include "testutil.hpp"

using namespace gstp;

TEST_CASE("instance round trip is canonical") {
    std::mt19937_64 rng(107);
    for (int it = 0; it < 40; ++it) {
        GstpInstance inst = random_instance({}, rng());
        std::ostringstream os;
        write_instance(os, inst);
        std::istringstream is(os.str());
        GstpInstance back = read_instance(is);
        CHECK(back.graph() == inst.graph());
        CHECK(back.terminals() == inst.terminals());
        CHECK(back.demands() == inst.demands());
        std::ostringstream os2;
        write_instance(os2, back);
        CHECK(os.str() == os2.str());
    }
}

TEST_CASE("windmill generator emits the expected header") {
    std::ostringstream os;
    write_graph(os, windmill(3));
    CHECK(os.str().substr(0, 12) == "p gstp 7 9 0");
}

TEST_CASE("parse errors carry line numbers") {
    SUBCASE("bad header") {
        std::istringstream is("p foo 1 2 3\n");
        CHECK_THROWS_AS(read_instance(is), ParseError);
    }
    SUBCASE("edge out of range") {
        std::istringstream is("p gstp 2 1 0\ne 0 5\n");
        try {
            read_instance(is);
            CHECK(false);
        } catch (const ParseError& e) {
            CHECK(e.line == 2);
        }
    }
    SUBCASE("count mismatch") {
        std::istringstream is("p gstp 2 2 0\ne 0 1\n");
        CHECK_THROWS_AS(read_instance(is), ParseError);
    }
    SUBCASE("comments are ignored") {
        std::istringstream is("c hello\np gstp 2 1 1\nc mid\ne 0 1\ns 1 2 0 1\n");
        GstpInstance inst = read_instance(is);
        CHECK(inst.terminal_count() == 1);
    }
}

TEST_CASE("decomposition files round trip") {
    auto fix = unlimited_bold_family(4);
    RawDecomposition raw = tree_cut_to_raw(fix.tcd);
    std::ostringstream os;
    write_decomposition(os, raw);
    std::istringstream is(os.str());
    RawDecomposition back = read_decomposition(is);
    CHECK(back.tree_cut == raw.tree_cut);
    CHECK(back.root == raw.root);
    CHECK(back.bags == raw.bags);
    TreeCutDecomposition tcd = tree_cut_from_raw(back, fix.graph);
    CHECK(validate_tree_cut(tcd, fix.graph).ok);
}

TEST_CASE("solution files round trip") {
    Solution sol{{{{Edge(0, 1), Edge(1, 2)}, 0}, {{}, 1}}};
    std::ostringstream os;
    write_solution(os, sol);
    std::istringstream is(os.str());
    Solution back = read_solution(is);
    REQUIRE(back.parts.size() == 2);
    CHECK(back.parts[0].edges == sol.parts[0].edges);
    CHECK(back.parts[1].edges.empty());
    CHECK(back.parts[1].terminal_index == 1);
}
