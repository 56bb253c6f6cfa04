// Acceptance suite: one pass/fail line per criterion, nonzero exit on
// any failure. Run through ctest (test name "acceptance") or directly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "gstp/families.hpp"
#include "gstp/fn_ilp.hpp"
#include "gstp/fracture.hpp"
#include "gstp/oracle.hpp"
#include "gstp/params.hpp"
#include "gstp/tree_cut.hpp"
#include "gstp/tw_dp.hpp"

using namespace gstp;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
    std::printf("%s  criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---- criterion 1: oracle cross-validation of the treewidth DP --------

void criterion1() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(0xC0FFEE);
    TwDpConfig cfg;
    cfg.total_demand_cap = 3;
    cfg.width_cap = 7;
    OracleConfig oc;
    oc.edge_budget = 12;
    oc.demand_budget = 3;

    int agree = 0, total = 0;
    for (int it = 0; it < 500; ++it) {
        GstpInstance inst = random_instance(RandomInstanceParams{}, rng());
        auto o = solve_exact(inst, oc);
        if (o.status == OracleStatus::BudgetExceeded) {
            report(1, false, "oracle budget exceeded inside its own envelope");
            return;
        }
        TwDpResult d = decide_tw(inst, std::nullopt, cfg);
        ++total;
        if ((d.decision == TwDecision::Feasible) == o.feasible()) ++agree;
    }
    double secs = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "decide_tw vs solve_exact: %d/%d agree on random instances (%.1fs < 60s)",
                  agree, total, secs);
    report(1, agree == total && total >= 500 && secs < 60.0, buf);
}

// ---- criterion 2: fracture pipeline cross-validation ------------------

void criterion2() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(0xFACADE);
    FnIlpConfig cfg;
    cfg.max_modulator = 2;
    cfg.max_ts = 1;
    OracleConfig oc;
    oc.edge_budget = 12;
    oc.demand_budget = 3;

    RandomInstanceParams p;
    p.min_vertices = 2;
    p.max_vertices = 5;
    p.max_edges = 6;
    p.max_terminal_sets = 2;
    p.max_total_demand = 3;

    int agree = 0, total = 0, reached_ilp = 0, early = 0;
    long attempts = 0;
    while ((total < 200 || reached_ilp < 100) && attempts < 400000) {
        ++attempts;
        GstpInstance inst = random_instance(p, rng());
        if (apply_rr_sensible(inst).terminal_count() == 0) continue;  // degenerate
        Decision d;
        FnIlpTrace trace;
        try {
            d = decide_by_fracture(inst, cfg, &trace);
        } catch (const CapExceeded&) {
            continue;  // no nice modulator of size <= 2 (or |T_S| > 1)
        }
        // cap the share of instances settled by the reduction rules so the
        // configuration/ILP machinery carries real weight in the corpus
        if (!trace.model && early >= 100) continue;
        auto o = solve_exact(inst, oc);
        if (o.status == OracleStatus::BudgetExceeded) continue;
        ++total;
        if (trace.model) ++reached_ilp;
        else ++early;
        if ((d == Decision::Feasible) == o.feasible()) ++agree;
    }
    double secs = seconds_since(t0);
    char buf[220];
    std::snprintf(buf, sizeof buf,
                  "decide_by_fracture vs solve_exact: %d/%d agree, %d via the selector program, "
                  "modulator <= 2 (%.1fs < 600s)",
                  agree, total, reached_ilp, secs);
    report(2, agree == total && total >= 200 && reached_ilp >= 100 && secs < 600.0, buf);
}

// ---- criterion 3: fracture-deletion fixtures and exhaustive check ----

bool brute_fracture(const Graph& g, int k, int d) {
    int n = g.vertex_count();
    if (d > n) return false;
    std::vector<int> pick(d);
    for (int i = 0; i < d; ++i) pick[i] = i;
    for (;;) {
        std::vector<Vertex> s(pick.begin(), pick.end());
        auto rem = g.remove_vertices(s);
        bool ok = true;
        for (const auto& c : rem.graph.components())
            if (static_cast<int>(c.size()) > k) ok = false;
        if (ok) return true;
        if (d == 0) return false;
        int i = d - 1;
        while (i >= 0 && pick[i] == n - d + i) --i;
        if (i < 0) return false;
        ++pick[i];
        for (int j = i + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
    }
}

void criterion3() {
    bool ok = true;
    ok &= !fracture_deletion(path_graph(5), {1, 1}).has_value();
    Graph two(10);
    for (int i = 0; i + 1 < 5; ++i) {
        two.add_edge(i, i + 1);
        two.add_edge(5 + i, 6 + i);
    }
    auto centers = fracture_deletion(two, {2, 2});
    ok &= centers.has_value() && *centers == std::vector<Vertex>{2, 7};

    std::mt19937_64 rng(0xABBA);
    for (int it = 0; it < 80 && ok; ++it) {
        Graph g = random_graph(8, 14, rng());
        int n = g.vertex_count();
        for (int k = 0; k <= n && ok; ++k)
            for (int d = 0; d <= n && ok; ++d)
                ok &= brute_fracture(g, k, d) == fracture_deletion(g, {k, d}).has_value();
    }
    report(3, ok, "P5 / two-P5 fracture fixtures; exhaustive agreement on |V| <= 8 corpora");
}

// ---- criterion 4: augmentation family fixtures ------------------------

void criterion4() {
    bool windmill_ok = true;
    std::string windmill_vals;
    for (int i = 2; i <= 6; ++i) {
        GstpInstance inst = star_pair_instance(i);
        int vc = vertex_cover_number(augment(inst, AugmentMode::Vertex).graph);
        windmill_ok &= vc == i;
        windmill_vals += std::to_string(vc) + (i < 6 ? "," : "");
    }
    bool clique_ok = true;
    for (int i = 2; i <= 6; ++i)
        clique_ok &=
            vertex_cover_number(augment(star_pair_instance(i), AugmentMode::Clique).graph) == 1;
    bool fen_ok = true;
    for (int i = 1; i <= 5; ++i) {
        GstpInstance inst = triple_instance(i);
        fen_ok &= feedback_edge_number(augment(inst, AugmentMode::Clique).graph) == i;
        fen_ok &= feedback_edge_number(augment(inst, AugmentMode::Vertex).graph) == 0;
    }
    std::string what =
        "family fixtures: vc(windmill W_i) == i for i in 2..6 (computed " + windmill_vals +
        "; a maximum matching only bounds it from below, and exhaustive search shows no cover"
        " of size i exists), vc(clique-augmented stars) == 1 " +
        (clique_ok ? "ok" : "FAILED") + ", fen fixtures " + (fen_ok ? "ok" : "FAILED");
    report(4, windmill_ok && clique_ok && fen_ok, what);
}

// ---- criterion 5: unlimited-bold decomposition fixture ----------------

void criterion5() {
    bool ok = true;
    for (int ell = 3; ell <= 20 && ok; ++ell) {
        auto fix = unlimited_bold_family(ell);
        ok &= width(fix.tcd, fix.graph) == 5;
        ok &= static_cast<int>(bold_children(fix.tcd, fix.graph, fix.m_node).size()) == ell + 2;
        TreeCutDecomposition fr = make_friendly(fix.tcd, fix.graph);
        ok &= width(fr, fix.graph) <= 5;
        for (int s = 0; s < fr.node_count() && ok; ++s)
            ok &= static_cast<int>(bold_children(fr, fix.graph, s).size() +
                                   fr.nodes[s].bag.size()) <= 7;
    }
    report(5, ok, "unlimited-bold family: width exactly 5, ell+2 bold children, friendly after");
}

// ---- criterion 6: three-path augmentation fixture ---------------------

void criterion6() {
    bool ok = true;
    for (int i = 1; i <= 3 && ok; ++i) {
        auto fix = three_path_fixture(i);
        ok &= width(fix.tcd, fix.aug.graph) <= 4;
        ok &= slim_width(fix.tcd, fix.aug.graph) <= 4;
    }
    report(6, ok, "three-path family: augmented decomposition width and slim width <= 4");
}

// ---- criterion 7: thin-node recursion rules ---------------------------

void criterion7() {
    std::mt19937_64 rng(0xBEEF);
    OracleConfig oc;
    oc.edge_budget = 14;
    oc.demand_budget = 4;
    auto sub = [&](const GstpInstance& i) { return solve_exact(i, oc).feasible(); };

    int total = 0, preserved = 0;
    long attempts = 0;
    while (total < 100 && attempts < 20000) {
        ++attempts;
        // inner part of 2-3 vertices, outer part of 2-4, two boundary edges
        int ni = 2 + static_cast<int>(rng() % 2);
        int no = 2 + static_cast<int>(rng() % 3);
        Graph g(ni + no);
        for (int a = 0; a < ni; ++a)
            for (int b = a + 1; b < ni; ++b)
                if (rng() % 2) g.add_edge(a, b);
        for (int a = 0; a < no; ++a)
            for (int b = a + 1; b < no; ++b)
                if (rng() % 2) g.add_edge(ni + a, ni + b);
        Vertex u = static_cast<Vertex>(rng() % ni), x = static_cast<Vertex>(rng() % ni);
        Vertex v = ni + static_cast<Vertex>(rng() % no), y = ni + static_cast<Vertex>(rng() % no);
        if (u == x && v == y) continue;  // would be a parallel edge
        g.add_edge(u, v);
        g.add_edge(x, y);
        if (g.edge_count() > 14) continue;

        std::vector<VertexSet> ts;
        std::vector<int> ds;
        if (ni >= 2) {
            ts.push_back(make_vertex_set({0, 1}));
            ds.push_back(1 + static_cast<int>(rng() % 2));
        }
        ts.push_back(make_vertex_set({ni, ni + 1}));
        ds.push_back(1);
        GstpInstance inst(g, ts, ds);
        if (inst.total_demand() > 4) continue;

        TreeCutDecomposition tcd;
        tcd.root = 0;
        tcd.nodes.resize(2);
        for (Vertex w = ni; w < ni + no; ++w) tcd.nodes[0].bag.push_back(w);
        for (Vertex w = 0; w < ni; ++w) tcd.nodes[1].bag.push_back(w);
        tcd.nodes[1].parent = 0;
        tcd.nodes[0].children = {1};
        if (adhesion(tcd, g, 1) != 2) continue;
        auto ys = tcd_y_sets(tcd, g)[1];
        if (!cross_link(inst, ys).empty()) continue;

        auto full = solve_exact(inst, oc);
        if (full.status == OracleStatus::BudgetExceeded) continue;
        auto r = apply_thin_reduction(inst, tcd, 1, sub);
        ++total;
        bool after;
        if (r.rule == ThinRule::Negative) after = false;
        else {
            auto red = solve_exact(*r.instance, oc);
            if (red.status == OracleStatus::BudgetExceeded) {
                --total;
                continue;
            }
            after = red.feasible();
        }
        if (after == full.feasible()) ++preserved;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "thin rules with oracle sub-solver preserve the decision on %d/%d instances",
                  preserved, total);
    report(7, preserved == total && total >= 100, buf);
}

// ---- criterion 8: DP table growth trend --------------------------------

void criterion8() {
    std::mt19937_64 rng(0xD00D);
    double worst_c = 0;
    int points = 0;
    for (int k = 1; k <= 3; ++k) {
        for (int sd = 1; sd <= 4; ++sd) {
            for (int rep = 0; rep < 3; ++rep) {
                Graph g = random_partial_ktree(8, k, 0.9, rng());
                std::vector<Vertex> pool(g.vertex_count());
                for (int v = 0; v < g.vertex_count(); ++v) pool[v] = v;
                std::shuffle(pool.begin(), pool.end(), rng);
                int size = 2 + static_cast<int>(rng() % 3);
                VertexSet term(pool.begin(), pool.begin() + size);
                GstpInstance inst = from_stp(g, make_vertex_set(term), sd);
                TwDpConfig cfg;
                cfg.total_demand_cap = 4;
                cfg.width_cap = 4;
                TwDpResult r = decide_tw(inst, std::nullopt, cfg);
                int w = r.width_used;
                if (w < 1 || r.max_table < 2) continue;
                double x = static_cast<double>(sd) * w * std::log2(w + 2.0);
                worst_c = std::max(worst_c, std::log2(static_cast<double>(r.max_table)) / x);
                ++points;
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "DP table growth: fitted c = %.2f over %d sweep points (bound c <= 4.0)",
                  worst_c, points);
    report(8, points >= 12 && worst_c <= 4.0, buf);
}

// ---- criterion 9: reduction-rule soundness suite -----------------------

void criterion9() {
    std::mt19937_64 rng(0x5EED);
    OracleConfig oc;
    oc.edge_budget = 14;
    oc.demand_budget = 4;
    bool all_ok = true;
    std::string detail;

    // RR1: drop undersized terminal sets
    {
        int total = 0, good = 0;
        while (total < 100) {
            RandomInstanceParams p;
            p.max_total_demand = 2;
            GstpInstance base = random_instance(p, rng());
            if (base.graph().vertex_count() == 0) continue;
            std::vector<VertexSet> ts = base.terminals();
            std::vector<int> ds = base.demands();
            ts.push_back({static_cast<Vertex>(rng() % base.graph().vertex_count())});
            ds.push_back(1);
            if (rng() % 2) {
                ts.push_back({});
                ds.push_back(1);
            }
            GstpInstance with(base.graph(), ts, ds);
            auto a = solve_exact(with, oc);
            auto b = solve_exact(apply_rr_sensible(with), oc);
            if (a.status == OracleStatus::BudgetExceeded) continue;
            ++total;
            if (a.status == b.status) ++good;
        }
        all_ok &= good == total;
        detail += "RR1 " + std::to_string(good) + "/100 ";
    }

    // RR2: overloaded vertex
    {
        int total = 0, good = 0;
        while (total < 100) {
            RandomInstanceParams p;
            p.max_total_demand = 3;
            GstpInstance inst = random_instance(p, rng());
            GstpInstance red = apply_rr_sensible(inst);
            if (red.terminal_count() == 0) continue;
            auto o = solve_exact(red, oc);
            if (o.status == OracleStatus::BudgetExceeded) continue;
            ++total;
            bool fired = std::holds_alternative<TrivialNegative>(apply_rr_degree(red));
            if (!fired || !o.feasible()) ++good;  // firing must imply infeasible
        }
        all_ok &= good == total;
        detail += "RR2 " + std::to_string(good) + "/100 ";
    }

    // RR3: component split
    {
        int total = 0, good = 0;
        while (total < 100) {
            RandomInstanceParams p;
            p.max_vertices = 4;
            p.max_edges = 5;
            p.max_total_demand = 2;
            GstpInstance a = random_instance(p, rng());
            GstpInstance b = random_instance(p, rng());
            int na = a.graph().vertex_count();
            Graph g(na + b.graph().vertex_count());
            for (const auto& [e, m] : a.graph().edges()) g.add_edge(e.u, e.v);
            for (const auto& [e, m] : b.graph().edges()) g.add_edge(na + e.u, na + e.v);
            std::vector<VertexSet> ts = a.terminals();
            std::vector<int> ds = a.demands();
            for (int t = 0; t < b.terminal_count(); ++t) {
                VertexSet shifted;
                for (Vertex v : b.terminal(t)) shifted.push_back(na + v);
                ts.push_back(shifted);
                ds.push_back(b.demand(t));
            }
            bool planted_crossing = false;
            if (rng() % 2 && na >= 1 && b.graph().vertex_count() >= 1) {
                ts.push_back(make_vertex_set({0, na}));
                ds.push_back(1);
                planted_crossing = a.graph().vertex_count() > 0;
            }
            GstpInstance inst(g, ts, ds);
            auto full = solve_exact(inst, oc);
            if (full.status == OracleStatus::BudgetExceeded) continue;
            ++total;
            auto split = apply_rr_components(inst);
            if (std::holds_alternative<TrivialNegative>(split)) {
                if (!full.feasible() && planted_crossing) ++good;
                else if (!full.feasible()) ++good;
            } else {
                bool parts_ok = true;
                for (const auto& part : std::get<ComponentSplit>(split).parts) {
                    auto r = solve_exact(part, oc);
                    parts_ok &= r.feasible();
                }
                if (parts_ok == full.feasible()) ++good;
            }
        }
        all_ok &= good == total;
        detail += "RR3 " + std::to_string(good) + "/100 ";
    }

    // RR4: crossing demand vs adhesion over a two-node decomposition
    {
        int total = 0, good = 0;
        while (total < 100) {
            int ni = 2 + static_cast<int>(rng() % 2), no = 2 + static_cast<int>(rng() % 2);
            Graph g(ni + no);
            for (int a = 1; a < ni; ++a) g.add_edge(a - 1, a);
            for (int a = 1; a < no; ++a) g.add_edge(ni + a - 1, ni + a);
            int cuts = 1 + static_cast<int>(rng() % 2);
            g.add_edge(0, ni);
            if (cuts == 2) g.add_edge(ni - 1, ni + no - 1);
            GstpInstance inst(g, {{0, ni + no - 1}}, {1 + static_cast<int>(rng() % 3)});
            TreeCutDecomposition tcd;
            tcd.root = 0;
            tcd.nodes.resize(2);
            for (Vertex w = ni; w < ni + no; ++w) tcd.nodes[0].bag.push_back(w);
            for (Vertex w = 0; w < ni; ++w) tcd.nodes[1].bag.push_back(w);
            tcd.nodes[1].parent = 0;
            tcd.nodes[0].children = {1};
            auto full = solve_exact(inst, oc);
            if (full.status == OracleStatus::BudgetExceeded) continue;
            ++total;
            auto r = apply_rr_crosslink(inst, tcd);
            if (std::holds_alternative<TrivialNegative>(r)) {
                if (!full.feasible()) ++good;
            } else {
                ++good;  // untouched instance trivially preserves the decision
            }
        }
        all_ok &= good == total;
        detail += "RR4 " + std::to_string(good) + "/100 ";
    }

    // RR5: adhesion-1 bridge removal
    {
        int total = 0, good = 0;
        while (total < 100) {
            int ni = 2 + static_cast<int>(rng() % 2), no = 2 + static_cast<int>(rng() % 2);
            Graph g(ni + no);
            for (int a = 0; a < ni; ++a)
                for (int b = a + 1; b < ni; ++b)
                    if (rng() % 2) g.add_edge(a, b);
            for (int a = 0; a < no; ++a)
                for (int b = a + 1; b < no; ++b)
                    if (rng() % 2) g.add_edge(ni + a, ni + b);
            g.add_edge(0, ni);  // the bridge
            std::vector<VertexSet> ts;
            std::vector<int> ds;
            if (rng() % 2) {
                ts.push_back(make_vertex_set({1 % ni, ni + no - 1}));  // crossing set
                ds.push_back(1);
            }
            if (ni >= 2) {
                ts.push_back(make_vertex_set({0, 1}));
                ds.push_back(1);
            }
            GstpInstance inst(g, ts, ds);
            TreeCutDecomposition tcd;
            tcd.root = 0;
            tcd.nodes.resize(2);
            for (Vertex w = ni; w < ni + no; ++w) tcd.nodes[0].bag.push_back(w);
            for (Vertex w = 0; w < ni; ++w) tcd.nodes[1].bag.push_back(w);
            tcd.nodes[1].parent = 0;
            tcd.nodes[0].children = {1};
            if (adhesion(tcd, g, 1) != 1) continue;
            auto ys = tcd_y_sets(tcd, g)[1];
            if (demand_cross_link(inst, ys) > 1) continue;
            auto full = solve_exact(inst, oc);
            if (full.status == OracleStatus::BudgetExceeded) continue;
            auto r = apply_rr_adh1(inst, tcd, 1);
            auto red = solve_exact(r.instance, oc);
            if (red.status == OracleStatus::BudgetExceeded) continue;
            ++total;
            if (red.feasible() == full.feasible()) ++good;
        }
        all_ok &= good == total;
        detail += "RR5 " + std::to_string(good) + "/100";
    }

    report(9, all_ok, "reduction rules preserve the oracle decision: " + detail);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all criteria passed\n");
    return failures ? 1 : 0;
}
