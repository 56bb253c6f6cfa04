#include "gstp/tree_cut.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gstp/families.hpp"

namespace gstp {

std::vector<int> TreeCutDecomposition::topo_order() const {
    std::vector<int> order{root};
    for (size_t i = 0; i < order.size(); ++i)
        for (int c : nodes[order[i]].children) order.push_back(c);
    return order;
}

std::vector<int> TreeCutDecomposition::subtree(int s) const {
    std::vector<int> order{s};
    for (size_t i = 0; i < order.size(); ++i)
        for (int c : nodes[order[i]].children) order.push_back(c);
    return order;
}

TcdValidation validate_tree_cut(const TreeCutDecomposition& tcd, const Graph& g) {
    auto bad = [](std::string s) { return TcdValidation{false, std::move(s)}; };
    if (tcd.nodes.empty()) return bad("no nodes");
    if (tcd.root < 0 || tcd.root >= tcd.node_count()) return bad("root out of range");
    if (tcd.nodes[tcd.root].parent != -1) return bad("root has a parent");
    auto order = tcd.topo_order();
    if (static_cast<int>(order.size()) != tcd.node_count()) return bad("tree not connected");
    std::vector<int> seen(tcd.node_count(), 0);
    for (int n : order) {
        if (seen[n]++) return bad("node reached twice");
        for (int c : tcd.nodes[n].children)
            if (c < 0 || c >= tcd.node_count() || tcd.nodes[c].parent != n)
                return bad("parent/child links inconsistent");
    }
    std::vector<int> owner(g.vertex_count(), -1);
    for (int n = 0; n < tcd.node_count(); ++n)
        for (Vertex v : tcd.nodes[n].bag) {
            if (v < 0 || v >= g.vertex_count()) return bad("bag vertex out of range");
            if (owner[v] != -1) return bad("vertex " + std::to_string(v) + " in two bags");
            owner[v] = n;
        }
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (owner[v] < 0) return bad("vertex " + std::to_string(v) + " in no bag");
    return {};
}

std::vector<std::vector<Vertex>> tcd_y_sets(const TreeCutDecomposition& tcd, const Graph& g) {
    (void)g;
    std::vector<std::vector<Vertex>> y(tcd.node_count());
    auto order = tcd.topo_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int n = *it;
        std::vector<Vertex> acc = tcd.nodes[n].bag;
        for (int c : tcd.nodes[n].children)
            acc.insert(acc.end(), y[c].begin(), y[c].end());
        y[n] = make_vertex_set(std::move(acc));
    }
    return y;
}

int adhesion(const TreeCutDecomposition& tcd, const Graph& g, int node) {
    auto y = tcd_y_sets(tcd, g);
    int total = 0;
    for (const auto& [e, m] : g.cut_edges(y[node])) total += m;
    return total;
}

Torso torso(const TreeCutDecomposition& tcd, const Graph& g, int node) {
    auto y = tcd_y_sets(tcd, g);
    // torso vertex of every graph vertex
    std::vector<int> tv(g.vertex_count(), -1);
    Torso out;
    for (Vertex v : tcd.nodes[node].bag) {
        tv[v] = static_cast<int>(out.core.size());
        out.core.push_back(v);
    }
    int next = out.core_size();
    for (int c : tcd.nodes[node].children) {
        if (y[c].empty()) continue;  // nothing to contract
        for (Vertex v : y[c]) tv[v] = next;
        out.peripheral_node.push_back(c);
        ++next;
    }
    bool have_top = false;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (tv[v] < 0) have_top = true;
    if (have_top) {
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (tv[v] < 0) tv[v] = next;
        out.peripheral_node.push_back(-1);
        ++next;
    }
    Graph t(next, true);
    for (const auto& [e, m] : g.edges()) {
        int a = tv[e.u], b = tv[e.v];
        if (a == b) continue;  // contraction loop (or internal edge): removed
        t.add_edge(a, b, m);
    }
    out.graph = std::move(t);
    return out;
}

namespace {

CenterResult suppress_center(const Torso& t, int degree_limit) {
    Graph g = t.graph;
    int n = g.vertex_count();
    std::vector<int> alive(n, 1);
    // current graph indices -> torso indices
    std::vector<int> torso_of(n);
    for (int i = 0; i < n; ++i) torso_of[i] = i;
    CenterResult out;
    for (;;) {
        int pick = -1;
        for (int v = 0; v < g.vertex_count(); ++v) {
            int tidx = torso_of[v];
            if (tidx < t.core_size()) continue;  // core vertices stay
            if (g.degree(v) <= degree_limit) {
                pick = v;
                break;
            }
        }
        if (pick < 0) break;
        out.suppressed_order.push_back(torso_of[pick]);
        auto res = g.suppress(pick);
        g = std::move(res.graph);
        std::vector<int> next(g.vertex_count());
        for (int v = 0; v < static_cast<int>(res.vmap.map.size()); ++v)
            if (res.vmap.map[v] >= 0) next[res.vmap.map[v]] = torso_of[v];
        torso_of = std::move(next);
    }
    out.graph = std::move(g);
    out.surviving = torso_of;
    std::sort(out.surviving.begin(), out.surviving.end());
    return out;
}

}  // namespace

CenterResult three_center(const Torso& t) {
    return suppress_center(t, 2);
}

CenterResult two_center(const Torso& t) {
    return suppress_center(t, 1);
}

int width(const TreeCutDecomposition& tcd, const Graph& g) {
    int w = 0;
    for (int n = 0; n < tcd.node_count(); ++n) {
        w = std::max(w, adhesion(tcd, g, n));
        w = std::max(w, three_center(torso(tcd, g, n)).graph.vertex_count());
    }
    return w;
}

int slim_width(const TreeCutDecomposition& tcd, const Graph& g) {
    int w = 0;
    for (int n = 0; n < tcd.node_count(); ++n) {
        w = std::max(w, adhesion(tcd, g, n));
        w = std::max(w, two_center(torso(tcd, g, n)).graph.vertex_count());
    }
    return w;
}

bool is_thin(const TreeCutDecomposition& tcd, const Graph& g, int node) {
    return adhesion(tcd, g, node) <= 2;
}

std::vector<int> bold_children(const TreeCutDecomposition& tcd, const Graph& g, int node) {
    std::vector<int> out;
    for (int c : tcd.nodes[node].children)
        if (!is_thin(tcd, g, c)) out.push_back(c);
    return out;
}

PredicateReport is_nice(const TreeCutDecomposition& tcd, const Graph& g) {
    auto y = tcd_y_sets(tcd, g);
    for (int t = 0; t < tcd.node_count(); ++t) {
        if (t == tcd.root || !is_thin(tcd, g, t)) continue;
        std::set<Vertex> outside_nbrs;
        std::set<Vertex> yt(y[t].begin(), y[t].end());
        for (Vertex v : y[t])
            for (Vertex w : g.neighbors(v))
                if (!yt.count(w)) outside_nbrs.insert(w);
        int parent = tcd.nodes[t].parent;
        for (int sib : tcd.nodes[parent].children) {
            if (sib == t) continue;
            for (Vertex v : y[sib])
                if (outside_nbrs.count(v))
                    return {false, "thin node " + std::to_string(t) +
                                       " touches sibling subtree " + std::to_string(sib)};
        }
    }
    return {};
}

PredicateReport is_friendly(const TreeCutDecomposition& tcd, const Graph& g) {
    auto nice = is_nice(tcd, g);
    if (!nice) return nice;
    int w = width(tcd, g);
    for (int s = 0; s < tcd.node_count(); ++s) {
        int count = static_cast<int>(bold_children(tcd, g, s).size()) +
                    static_cast<int>(tcd.nodes[s].bag.size());
        if (count > w + 2)
            return {false, "node " + std::to_string(s) + " has |bold|+|bag| = " +
                               std::to_string(count) + " > width+2 = " + std::to_string(w + 2)};
    }
    return {};
}

std::vector<int> cross_link(const GstpInstance& inst, const std::vector<Vertex>& y_s) {
    std::set<Vertex> ys(y_s.begin(), y_s.end());
    std::vector<int> out;
    for (int t = 0; t < inst.terminal_count(); ++t) {
        bool in = false, outp = false;
        for (Vertex v : inst.terminal(t)) (ys.count(v) ? in : outp) = true;
        if (in && outp) out.push_back(t);
    }
    return out;
}

int demand_cross_link(const GstpInstance& inst, const std::vector<Vertex>& y_s) {
    int d = 0;
    for (int t : cross_link(inst, y_s)) d += inst.demand(t);
    return d;
}

bool is_simple_node(const GstpInstance& inst, const TreeCutDecomposition& tcd, int node) {
    const Graph& g = inst.graph();
    auto y = tcd_y_sets(tcd, g);
    if (!is_thin(tcd, g, node)) return false;
    if (y[node].size() != 1) return false;
    if (adhesion(tcd, g, node) != 2) return false;
    return cross_link(inst, y[node]).empty();
}

PredicateReport is_simple(const GstpInstance& inst, const TreeCutDecomposition& tcd) {
    auto friendly = is_friendly(tcd, inst.graph());
    if (!friendly) return friendly;
    for (int s = 0; s < tcd.node_count(); ++s) {
        if (s == tcd.root || !is_thin(tcd, inst.graph(), s)) continue;
        if (!is_simple_node(inst, tcd, s))
            return {false, "thin node " + std::to_string(s) + " not simple"};
    }
    return {};
}

std::vector<int> fake_nodes(const TreeCutDecomposition& tcd, const Graph& g, int s) {
    Torso t = torso(tcd, g, s);
    auto bold = bold_children(tcd, g, s);
    std::set<int> bold_set(bold.begin(), bold.end());
    CenterResult c = three_center(t);
    std::vector<int> out;
    for (int tidx : c.suppressed_order) {
        if (tidx < t.core_size()) continue;
        int node = t.peripheral_node[tidx - t.core_size()];
        if (node >= 0 && bold_set.count(node)) out.push_back(node);
    }
    return out;
}

TreeCutDecomposition expand(const TreeCutDecomposition& tcd, const Graph& g, int s, int a, int b) {
    auto fakes = fake_nodes(tcd, g, s);
    if (std::find(fakes.begin(), fakes.end(), a) == fakes.end() ||
        std::find(fakes.begin(), fakes.end(), b) == fakes.end())
        throw std::invalid_argument("expand: nodes are not fake bold children");

    Torso t = torso(tcd, g, s);
    int ta = -1, tb = -1;
    for (size_t i = 0; i < t.peripheral_node.size(); ++i) {
        if (t.peripheral_node[i] == a) ta = t.core_size() + static_cast<int>(i);
        if (t.peripheral_node[i] == b) tb = t.core_size() + static_cast<int>(i);
    }
    int mult = t.graph.multiplicity(ta, tb);
    if (mult < 1) throw std::invalid_argument("expand: no edge between the two subtrees");
    if (adhesion(tcd, g, a) + adhesion(tcd, g, b) - 2 * mult < 3)
        throw std::invalid_argument("expand: merged adhesion below 3");

    TreeCutDecomposition out = tcd;
    TcdNode fresh;
    fresh.parent = s;
    int c = out.node_count();
    out.nodes.push_back(fresh);
    auto& kids = out.nodes[s].children;
    kids.erase(std::remove(kids.begin(), kids.end(), a), kids.end());
    kids.erase(std::remove(kids.begin(), kids.end(), b), kids.end());
    kids.push_back(c);
    out.nodes[a].parent = c;
    out.nodes[b].parent = c;
    out.nodes[c].children = {a, b};
    return out;
}

TreeCutDecomposition blow_up(const TreeCutDecomposition& tcd, const Graph& g, int s) {
    TreeCutDecomposition cur = tcd;
    int w = width(cur, g);
    for (;;) {
        int count = static_cast<int>(bold_children(cur, g, s).size()) +
                    static_cast<int>(cur.nodes[s].bag.size());
        if (count <= w + 2) return cur;
        auto fakes = fake_nodes(cur, g, s);
        if (fakes.size() < 3)
            throw std::logic_error("blow_up: fewer than three fake children while above bound");
        Torso t = torso(cur, g, s);
        auto torso_idx = [&](int node) {
            for (size_t i = 0; i < t.peripheral_node.size(); ++i)
                if (t.peripheral_node[i] == node) return t.core_size() + static_cast<int>(i);
            return -1;
        };
        int m1 = t.graph.multiplicity(torso_idx(fakes[0]), torso_idx(fakes[1]));
        if (m1 == 1) cur = expand(cur, g, s, fakes[0], fakes[1]);
        else cur = expand(cur, g, s, fakes[1], fakes[2]);
    }
}

TreeCutDecomposition make_friendly(const TreeCutDecomposition& tcd, const Graph& g) {
    auto nice = is_nice(tcd, g);
    if (!nice) throw std::invalid_argument("make_friendly: decomposition not nice: " + nice.violation);
    TreeCutDecomposition cur = tcd;
    int original_nodes = tcd.node_count();
    for (int s = 0; s < original_nodes; ++s) cur = blow_up(cur, g, s);
    auto rep = is_friendly(cur, g);
    if (!rep) throw std::logic_error("make_friendly: result not friendly: " + rep.violation);
    return cur;
}

std::variant<GstpInstance, TrivialNegative> apply_rr_crosslink(const GstpInstance& inst,
                                                               const TreeCutDecomposition& tcd) {
    auto y = tcd_y_sets(tcd, inst.graph());
    for (int s = 0; s < tcd.node_count(); ++s)
        if (demand_cross_link(inst, y[s]) > adhesion(tcd, inst.graph(), s))
            return TrivialNegative{};
    return inst;
}

Adh1Result apply_rr_adh1(const GstpInstance& inst, const TreeCutDecomposition& tcd, int s) {
    const Graph& g = inst.graph();
    auto y = tcd_y_sets(tcd, g);
    if (adhesion(tcd, g, s) != 1) throw std::invalid_argument("apply_rr_adh1: adhesion != 1");
    if (demand_cross_link(inst, y[s]) > 1)
        throw std::invalid_argument("apply_rr_adh1: crossing demand not reduced first");

    auto cut = g.cut_edges(y[s]);
    Edge e = cut.at(0).e;
    std::set<Vertex> ys(y[s].begin(), y[s].end());
    Vertex u = ys.count(e.u) ? e.u : e.v;
    Vertex v = ys.count(e.u) ? e.v : e.u;

    Graph h = g;
    h.remove_edge(e.u, e.v, 1);

    std::vector<VertexSet> ts;
    std::vector<int> ds;
    auto crossing = cross_link(inst, y[s]);
    for (int t = 0; t < inst.terminal_count(); ++t) {
        if (!crossing.empty() && t == crossing[0]) continue;
        ts.push_back(inst.terminal(t));
        ds.push_back(inst.demand(t));
    }
    if (!crossing.empty()) {
        const auto& t = inst.terminal(crossing[0]);
        VertexSet inside{u}, outside{v};
        for (Vertex w : t) (ys.count(w) ? inside : outside).push_back(w);
        ts.push_back(make_vertex_set(inside));
        ds.push_back(1);
        ts.push_back(make_vertex_set(outside));
        ds.push_back(1);
    }
    return {GstpInstance(std::move(h), std::move(ts), std::move(ds)), tcd};
}

namespace {

// contract `merge` into one vertex and restore simplicity by subdividing
// surplus parallel edges; the terminal sets of `keep` are remapped
GstpInstance contract_simple(const GstpInstance& inst, const std::vector<Vertex>& merge,
                             Vertex* merged_vertex) {
    auto res = inst.graph().contract(merge, true);
    Graph g = res.graph;
    // subdivide parallel copies until simple
    for (bool again = true; again;) {
        again = false;
        for (const auto& [e, m] : g.edges()) {
            if (m > 1) {
                g.remove_edge(e.u, e.v, m - 1);
                for (int i = 0; i < m - 1; ++i) {
                    Vertex w = g.add_vertices(1);
                    g.add_edge(e.u, w);
                    g.add_edge(e.v, w);
                }
                again = true;
                break;
            }
        }
    }
    Graph simple(g.vertex_count(), false);
    for (const auto& [e, m] : g.edges()) simple.add_edge(e.u, e.v, 1);

    std::vector<VertexSet> ts;
    std::vector<int> ds;
    for (int t = 0; t < inst.terminal_count(); ++t) {
        VertexSet mapped;
        for (Vertex w : inst.terminal(t)) mapped.push_back(res.vmap.at(w));
        ts.push_back(make_vertex_set(mapped));
        ds.push_back(inst.demand(t));
    }
    if (merged_vertex) *merged_vertex = res.representative;
    return GstpInstance(std::move(simple), std::move(ts), std::move(ds));
}

}  // namespace

ThinNodeSubinstances thin_subinstances(const GstpInstance& inst, const TreeCutDecomposition& tcd,
                                       int s) {
    const Graph& g = inst.graph();
    auto y = tcd_y_sets(tcd, g);
    if (s == tcd.root) throw std::invalid_argument("thin_subinstances: root is not eligible");
    if (adhesion(tcd, g, s) != 2) throw std::invalid_argument("thin_subinstances: adhesion != 2");
    if (!cross_link(inst, y[s]).empty())
        throw std::invalid_argument("thin_subinstances: a terminal set crosses the link");
    if (y[s].size() < 2) throw std::invalid_argument("thin_subinstances: fewer than two vertices");

    ThinNodeSubinstances out;
    out.y_s = y[s];
    std::set<Vertex> ys(y[s].begin(), y[s].end());
    auto cut = g.cut_edges(y[s]);
    std::vector<std::pair<Vertex, Vertex>> sides;
    for (const auto& [e, m] : cut)
        for (int i = 0; i < m; ++i)
            sides.push_back(ys.count(e.u) ? std::make_pair(e.u, e.v) : std::make_pair(e.v, e.u));
    if (sides.size() != 2) throw std::logic_error("thin_subinstances: boundary is not two edges");
    out.u = sides[0].first;
    out.v = sides[0].second;
    out.x = sides[1].first;
    out.y = sides[1].second;

    // terminal family restricted to Y_s
    auto restrict_to_ys = [&](const Graph& host, const VertexMap& vmap,
                              std::vector<VertexSet>* ts, std::vector<int>* ds) {
        for (int t = 0; t < inst.terminal_count(); ++t) {
            const auto& term = inst.terminal(t);
            if (term.empty() || !ys.count(term[0])) continue;
            VertexSet mapped;
            for (Vertex w : term) mapped.push_back(vmap.at(w));
            ts->push_back(make_vertex_set(mapped));
            ds->push_back(inst.demand(t));
        }
        (void)host;
    };

    auto ind = g.induced(y[s]);
    {
        std::vector<VertexSet> ts;
        std::vector<int> ds;
        restrict_to_ys(ind.graph, ind.vmap, &ts, &ds);
        out.restriction = GstpInstance(ind.graph, ts, ds);
        // one extra connection between the boundary feet
        ts.push_back(make_vertex_set({ind.vmap.at(out.u), ind.vmap.at(out.x)}));
        ds.push_back(1);
        out.supply_variant = GstpInstance(ind.graph, std::move(ts), std::move(ds));
    }
    {
        std::vector<Vertex> outside;
        for (Vertex w = 0; w < g.vertex_count(); ++w)
            if (!ys.count(w)) outside.push_back(w);
        GstpInstance z = contract_simple(inst, outside, nullptr);
        // terminals outside Y_s collapse onto the contracted vertex; only
        // the ones inside Y_s are kept
        std::vector<VertexSet> ts;
        std::vector<int> ds;
        auto res = inst.graph().contract(outside, true);
        for (int t = 0; t < inst.terminal_count(); ++t) {
            const auto& term = inst.terminal(t);
            if (term.empty() || !ys.count(term[0])) continue;
            VertexSet mapped;
            for (Vertex w : term) mapped.push_back(res.vmap.at(w));
            ts.push_back(make_vertex_set(mapped));
            ds.push_back(inst.demand(t));
        }
        out.contract_variant = GstpInstance(z.graph(), std::move(ts), std::move(ds));
    }
    return out;
}

namespace {

// decomposition for the instance with Y_s removed: drop the subtree,
// remap the remaining bags
TreeCutDecomposition tcd_without_subtree(const TreeCutDecomposition& tcd, int s,
                                         const VertexMap& vmap) {
    auto drop = tcd.subtree(s);
    std::set<int> dropped(drop.begin(), drop.end());
    std::vector<int> new_id(tcd.node_count(), -1);
    TreeCutDecomposition out;
    for (int n = 0; n < tcd.node_count(); ++n) {
        if (dropped.count(n)) continue;
        new_id[n] = out.node_count();
        TcdNode copy;
        for (Vertex w : tcd.nodes[n].bag)
            if (vmap.map[w] >= 0) copy.bag.push_back(vmap.map[w]);
        std::sort(copy.bag.begin(), copy.bag.end());
        out.nodes.push_back(std::move(copy));
    }
    for (int n = 0; n < tcd.node_count(); ++n) {
        if (new_id[n] < 0) continue;
        int p = tcd.nodes[n].parent;
        if (p >= 0 && new_id[p] >= 0) {
            out.nodes[new_id[n]].parent = new_id[p];
            out.nodes[new_id[p]].children.push_back(new_id[n]);
        }
    }
    out.root = new_id[tcd.root];
    return out;
}

}  // namespace

ThinReductionResult apply_thin_reduction(const GstpInstance& inst,
                                         const TreeCutDecomposition& tcd, int s,
                                         const SubSolver& solve) {
    ThinNodeSubinstances sub = thin_subinstances(inst, tcd, s);
    std::set<Vertex> ys(sub.y_s.begin(), sub.y_s.end());

    std::vector<VertexSet> kept_ts;
    std::vector<int> kept_ds;
    for (int t = 0; t < inst.terminal_count(); ++t) {
        const auto& term = inst.terminal(t);
        if (!term.empty() && ys.count(term[0])) continue;  // solved inside Y_s
        kept_ts.push_back(term);
        kept_ds.push_back(inst.demand(t));
    }

    if (solve(sub.supply_variant)) {
        // contract Y_s, keep the outside terminals
        GstpInstance shell(inst.graph(), kept_ts, kept_ds);
        Vertex merged = -1;
        GstpInstance reduced = contract_simple(shell, sub.y_s, &merged);
        // decomposition: subtree replaced by one node holding the merged
        // vertex plus any subdivision vertices
        auto res = inst.graph().contract(sub.y_s, true);
        TreeCutDecomposition dropped = tcd_without_subtree(tcd, s, res.vmap);
        std::vector<Vertex> bag{merged};
        for (Vertex w = res.graph.vertex_count(); w < reduced.graph().vertex_count(); ++w)
            bag.push_back(w);
        TcdNode node;
        node.bag = make_vertex_set(std::move(bag));
        node.parent = dropped.root;
        dropped.nodes[dropped.root].children.push_back(dropped.node_count());
        dropped.nodes.push_back(std::move(node));
        auto check = validate_tree_cut(dropped, reduced.graph());
        if (!check) throw std::logic_error("apply_thin_reduction: " + check.violation);
        return {ThinRule::Supply, std::move(reduced), std::move(dropped)};
    }
    if (solve(sub.restriction)) {
        auto rem = inst.graph().remove_vertices(sub.y_s);
        std::vector<VertexSet> ts;
        std::vector<int> ds;
        for (size_t i = 0; i < kept_ts.size(); ++i) {
            VertexSet mapped;
            for (Vertex w : kept_ts[i]) mapped.push_back(rem.vmap.at(w));
            ts.push_back(make_vertex_set(mapped));
            ds.push_back(kept_ds[i]);
        }
        GstpInstance reduced(rem.graph, std::move(ts), std::move(ds));
        TreeCutDecomposition dropped = tcd_without_subtree(tcd, s, rem.vmap);
        auto check = validate_tree_cut(dropped, reduced.graph());
        if (!check) throw std::logic_error("apply_thin_reduction: " + check.violation);
        return {ThinRule::Independent, std::move(reduced), std::move(dropped)};
    }
    if (solve(sub.contract_variant)) {
        auto rem = inst.graph().remove_vertices(sub.y_s);
        std::vector<VertexSet> ts;
        std::vector<int> ds;
        for (size_t i = 0; i < kept_ts.size(); ++i) {
            VertexSet mapped;
            for (Vertex w : kept_ts[i]) mapped.push_back(rem.vmap.at(w));
            ts.push_back(make_vertex_set(mapped));
            ds.push_back(kept_ds[i]);
        }
        // the crossing tree's outside part must still link v and y
        ts.push_back(make_vertex_set({rem.vmap.at(sub.v), rem.vmap.at(sub.y)}));
        ds.push_back(1);
        GstpInstance reduced(rem.graph, std::move(ts), std::move(ds));
        TreeCutDecomposition dropped = tcd_without_subtree(tcd, s, rem.vmap);
        auto check = validate_tree_cut(dropped, reduced.graph());
        if (!check) throw std::logic_error("apply_thin_reduction: " + check.violation);
        return {ThinRule::Demand, std::move(reduced), std::move(dropped)};
    }
    return {ThinRule::Negative, std::nullopt, std::nullopt};
}

MakeSimpleResult make_simple(const GstpInstance& inst, const TreeCutDecomposition& tcd) {
    const Graph& g = inst.graph();
    auto nice = is_nice(tcd, g);
    if (!nice) throw std::invalid_argument("make_simple: decomposition not nice: " + nice.violation);

    int w = width(tcd, g);
    std::vector<std::vector<int>> wired(tcd.node_count());  // s -> thin non-simple children
    int max_delta = 0;
    for (int s = 0; s < tcd.node_count(); ++s) {
        for (int c : tcd.nodes[s].children)
            if (is_thin(tcd, g, c) && !is_simple_node(inst, tcd, c)) wired[s].push_back(c);
        int delta = static_cast<int>(wired[s].size()) +
                    static_cast<int>(bold_children(tcd, g, s).size()) +
                    static_cast<int>(tcd.nodes[s].bag.size()) - w - 1;
        max_delta = std::max(max_delta, delta);
    }
    int target = w + 4 + std::max(0, max_delta);

    std::vector<char> needs_pair(tcd.node_count(), 0);
    for (int s = 0; s < tcd.node_count(); ++s) {
        if (!wired[s].empty()) needs_pair[s] = 1;
        for (int c : wired[s]) needs_pair[c] = 1;
    }

    Graph h = g;
    TreeCutDecomposition out = tcd;
    std::vector<std::pair<Vertex, Vertex>> pair_of(tcd.node_count(), {-1, -1});
    for (int s = 0; s < tcd.node_count(); ++s) {
        if (!needs_pair[s]) continue;
        Vertex a = h.add_vertices(2);
        pair_of[s] = {a, a + 1};
        out.nodes[s].bag.push_back(a);
        out.nodes[s].bag.push_back(a + 1);
        std::sort(out.nodes[s].bag.begin(), out.nodes[s].bag.end());
    }
    for (int s = 0; s < tcd.node_count(); ++s)
        for (int c : wired[s])
            for (Vertex a : {pair_of[s].first, pair_of[s].second})
                for (Vertex b : {pair_of[c].first, pair_of[c].second}) h.add_edge(a, b);

    // pad the root with isolated vertices up to the guaranteed width
    while (width(out, h) < target) {
        Vertex a = h.add_vertices(1);
        out.nodes[out.root].bag.push_back(a);
        std::sort(out.nodes[out.root].bag.begin(), out.nodes[out.root].bag.end());
    }

    // drop empty leaves (repeatedly)
    for (bool again = true; again;) {
        again = false;
        auto ysets = tcd_y_sets(out, h);
        for (int n = 0; n < out.node_count(); ++n) {
            if (n == out.root || !out.nodes[n].children.empty() || !ysets[n].empty()) continue;
            VertexMap identity;
            identity.map.resize(h.vertex_count());
            for (Vertex v = 0; v < h.vertex_count(); ++v) identity.map[v] = v;
            out = tcd_without_subtree(out, n, identity);
            again = true;
            break;
        }
    }

    GstpInstance inst2(h, inst.terminals(), inst.demands());
    auto rep = is_simple(inst2, out);
    if (!rep) throw std::logic_error("make_simple: result not simple: " + rep.violation);
    if (width(out, h) != target) throw std::logic_error("make_simple: width off target");
    return {std::move(inst2), std::move(out), target};
}

UnlimitedBoldFixture unlimited_bold_family(int ell) {
    if (ell < 1) throw std::invalid_argument("unlimited_bold_family: ell < 1");
    // two top vertices, an ell-long doubled chain of 2-vertex groups,
    // then two 2-vertex groups joined by four cross edges
    int n = 2 + 2 * ell + 4;
    Graph g(n);
    auto a = [&](int i) { return 2 + 2 * (i - 1); };      // i in [1, ell]
    auto b = [&](int i) { return 3 + 2 * (i - 1); };
    Vertex x1 = 2 + 2 * ell, x2 = x1 + 1, y1 = x1 + 2, y2 = x1 + 3;
    g.add_edge(0, a(1));
    g.add_edge(1, b(1));
    for (int i = 1; i < ell; ++i) {
        g.add_edge(a(i), a(i + 1));
        g.add_edge(b(i), b(i + 1));
    }
    g.add_edge(a(ell), x1);
    g.add_edge(b(ell), y1);
    g.add_edge(x1, y1);
    g.add_edge(x1, y2);
    g.add_edge(x2, y1);
    g.add_edge(x2, y2);

    TreeCutDecomposition tcd;
    tcd.root = 0;
    tcd.nodes.resize(4 + ell);
    tcd.nodes[0].bag = {0, 1};
    tcd.nodes[1].parent = 0;  // m, empty bag
    tcd.nodes[0].children = {1};
    tcd.nodes[2].parent = 1;
    tcd.nodes[2].bag = {x1, x2};
    tcd.nodes[3].parent = 1;
    tcd.nodes[3].bag = {y1, y2};
    tcd.nodes[1].children = {2, 3};
    for (int i = 1; i <= ell; ++i) {
        int id = 3 + i;
        tcd.nodes[id].parent = 1;
        tcd.nodes[id].bag = {a(i), b(i)};
        tcd.nodes[1].children.push_back(id);
    }
    auto rep = validate_tree_cut(tcd, g);
    if (!rep) throw std::logic_error("unlimited_bold_family: " + rep.violation);
    return {std::move(g), std::move(tcd), 1};
}

ThreePathFixture three_path_fixture(int i) {
    ThreePathFixture out;
    out.instance = three_path_instance(i);
    out.aug = augment(out.instance, AugmentMode::Vertex);
    long paths = 4L * i * i * i * i;
    TreeCutDecomposition tcd;
    tcd.root = 0;
    tcd.nodes.resize(1 + paths);
    tcd.nodes[0].bag = {0};
    int host_n = out.instance.graph().vertex_count();
    for (long j = 0; j < paths; ++j) {
        int id = 1 + static_cast<int>(j);
        Vertex first = static_cast<Vertex>(1 + 3 * j);
        tcd.nodes[id].parent = 0;
        tcd.nodes[0].children.push_back(id);
        tcd.nodes[id].bag = {first, first + 1, first + 2,
                             static_cast<Vertex>(host_n + j)};
        std::sort(tcd.nodes[id].bag.begin(), tcd.nodes[id].bag.end());
    }
    auto rep = validate_tree_cut(tcd, out.aug.graph);
    if (!rep) throw std::logic_error("three_path_fixture: " + rep.violation);
    out.tcd = std::move(tcd);
    return out;
}

TreeCutDecomposition tree_cut_from_raw(const RawDecomposition& raw, const Graph& g) {
    TreeCutDecomposition tcd;
    tcd.root = raw.root;
    tcd.nodes.resize(raw.bags.size());
    for (size_t i = 0; i < raw.bags.size(); ++i) tcd.nodes[i].bag = raw.bags[i];
    for (auto [p, c] : raw.links) {
        if (tcd.nodes[c].parent != -1)
            throw std::invalid_argument("tree-cut decomposition: node has two parents");
        tcd.nodes[c].parent = p;
        tcd.nodes[p].children.push_back(c);
    }
    auto rep = validate_tree_cut(tcd, g);
    if (!rep) throw std::invalid_argument("tree-cut decomposition: " + rep.violation);
    return tcd;
}

RawDecomposition tree_cut_to_raw(const TreeCutDecomposition& tcd) {
    RawDecomposition raw;
    raw.tree_cut = true;
    raw.root = tcd.root;
    raw.bags.resize(tcd.nodes.size());
    for (int n = 0; n < tcd.node_count(); ++n) {
        raw.bags[n] = tcd.nodes[n].bag;
        for (int c : tcd.nodes[n].children) raw.links.push_back({n, c});
    }
    return raw;
}

}  // namespace gstp
