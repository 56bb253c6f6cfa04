#include "gstp/instance.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace gstp {

VertexSet make_vertex_set(std::vector<Vertex> vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

GstpInstance::GstpInstance(Graph g, std::vector<VertexSet> terminals, std::vector<int> demands)
    : graph_(std::move(g)) {
    if (!graph_.is_simple()) throw std::invalid_argument("GstpInstance: host graph must be simple");
    if (terminals.size() != demands.size())
        throw std::invalid_argument("GstpInstance: terminal/demand size mismatch");
    std::map<VertexSet, int> merged;
    for (size_t i = 0; i < terminals.size(); ++i) {
        if (demands[i] < 1) throw std::invalid_argument("GstpInstance: demand < 1");
        VertexSet t = make_vertex_set(std::move(terminals[i]));
        for (Vertex v : t)
            if (v < 0 || v >= graph_.vertex_count())
                throw std::out_of_range("GstpInstance: terminal vertex out of range");
        merged[std::move(t)] += demands[i];
    }
    for (auto& [t, d] : merged) {
        terminals_.push_back(t);
        demands_.push_back(d);
    }
}

int GstpInstance::total_demand() const {
    int s = 0;
    for (int d : demands_) s += d;
    return s;
}

GstpInstance GstpInstance::remap(Graph g, const VertexMap& vmap) const {
    std::vector<VertexSet> ts;
    ts.reserve(terminals_.size());
    for (const auto& t : terminals_) ts.push_back(vmap.image(t));
    return GstpInstance(std::move(g), std::move(ts), demands_);
}

GstpInstance from_stp(const Graph& g, const VertexSet& t, int d) {
    return GstpInstance(g, {t}, {d});
}

GstpInstance from_stp(const StpInstance& stp) {
    return from_stp(stp.graph, stp.terminals, stp.demand);
}

GstpInstance from_edp(const Graph& g, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
    std::vector<VertexSet> ts;
    std::vector<int> ds;
    for (const auto& [u, v] : pairs) {
        if (u == v) throw std::invalid_argument("from_edp: pair endpoints equal");
        ts.push_back(make_vertex_set({u, v}));
        ds.push_back(1);
    }
    return GstpInstance(g, std::move(ts), std::move(ds));
}

namespace {

VerifyResult fail(std::string msg) {
    return VerifyResult{false, std::move(msg)};
}

bool edges_connected_containing(const Graph& g, const std::vector<Edge>& edges, const VertexSet& t,
                                std::string* why) {
    if (edges.empty()) {
        if (t.size() > 1) {
            *why = "empty edge set cannot connect " + std::to_string(t.size()) + " terminals";
            return false;
        }
        return true;
    }
    std::set<Vertex> verts;
    for (const Edge& e : edges) {
        if (e.u < 0 || e.v >= g.vertex_count() || !g.has_edge(e.u, e.v)) {
            *why = "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") not in graph";
            return false;
        }
        verts.insert(e.u);
        verts.insert(e.v);
    }
    for (Vertex v : t) {
        if (!verts.count(v)) {
            *why = "terminal " + std::to_string(v) + " not covered";
            return false;
        }
    }
    // connectivity of the edge-induced subgraph
    std::map<Vertex, std::vector<Vertex>> adj;
    for (const Edge& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::set<Vertex> seen{*verts.begin()};
    std::vector<Vertex> stack{*verts.begin()};
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : adj[v])
            if (seen.insert(w).second) stack.push_back(w);
    }
    if (seen.size() != verts.size()) {
        *why = "edge set disconnected";
        return false;
    }
    return true;
}

}  // namespace

VerifyResult verify(const GstpInstance& inst, const Solution& sol) {
    std::set<Edge> used;
    std::vector<int> count(inst.terminal_count(), 0);
    for (size_t p = 0; p < sol.parts.size(); ++p) {
        const auto& part = sol.parts[p];
        if (part.terminal_index < 0 || part.terminal_index >= inst.terminal_count())
            return fail("part " + std::to_string(p) + ": terminal index out of range");
        for (const Edge& e : part.edges) {
            if (e.u < 0 || e.u >= inst.graph().vertex_count() || e.v < 0 ||
                e.v >= inst.graph().vertex_count())
                return fail("part " + std::to_string(p) + ": edge endpoint out of range");
            if (!used.insert(e).second)
                return fail("part " + std::to_string(p) + ": edge (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ") reused");
        }
        std::string why;
        if (!edges_connected_containing(inst.graph(), part.edges,
                                        inst.terminal(part.terminal_index), &why))
            return fail("part " + std::to_string(p) + ": " + why);
        ++count[part.terminal_index];
    }
    for (int i = 0; i < inst.terminal_count(); ++i)
        if (count[i] != inst.demand(i))
            return fail("terminal set " + std::to_string(i) + ": got " + std::to_string(count[i]) +
                        " parts, demand " + std::to_string(inst.demand(i)));
    return {};
}

AugmentedGraph augment(const GstpInstance& inst, AugmentMode mode) {
    const Graph& g = inst.graph();
    if (mode == AugmentMode::Vertex) {
        Graph a(g.vertex_count() + inst.terminal_count(), false);
        for (const auto& [e, m] : g.edges()) a.add_edge(e.u, e.v, 1);
        std::vector<Vertex> augv;
        for (int i = 0; i < inst.terminal_count(); ++i) {
            Vertex w = g.vertex_count() + i;
            augv.push_back(w);
            for (Vertex t : inst.terminal(i)) a.add_edge(w, t, 1);
        }
        return {std::move(a), std::move(augv), mode};
    }
    Graph a(g.vertex_count(), true);
    for (const auto& [e, m] : g.edges()) a.add_edge(e.u, e.v, m);
    for (int i = 0; i < inst.terminal_count(); ++i) {
        const auto& t = inst.terminal(i);
        for (size_t x = 0; x < t.size(); ++x)
            for (size_t y = x + 1; y < t.size(); ++y) a.add_edge(t[x], t[y], 1);
    }
    return {std::move(a), {}, mode};
}

GstpInstance apply_rr_sensible(const GstpInstance& inst) {
    std::vector<VertexSet> ts;
    std::vector<int> ds;
    for (int i = 0; i < inst.terminal_count(); ++i) {
        if (inst.terminal(i).size() < 2) continue;
        ts.push_back(inst.terminal(i));
        ds.push_back(inst.demand(i));
    }
    return GstpInstance(inst.graph(), std::move(ts), std::move(ds));
}

std::variant<GstpInstance, TrivialNegative> apply_rr_degree(const GstpInstance& inst) {
    std::vector<long> load(inst.graph().vertex_count(), 0);
    for (int i = 0; i < inst.terminal_count(); ++i)
        for (Vertex v : inst.terminal(i)) load[v] += inst.demand(i);
    for (Vertex v = 0; v < inst.graph().vertex_count(); ++v)
        if (load[v] > inst.graph().degree(v)) return TrivialNegative{};
    return inst;
}

std::variant<ComponentSplit, TrivialNegative> apply_rr_components(const GstpInstance& inst) {
    auto comps = inst.graph().components();
    std::vector<int> comp_of(inst.graph().vertex_count(), -1);
    for (size_t c = 0; c < comps.size(); ++c)
        for (Vertex v : comps[c]) comp_of[v] = static_cast<int>(c);

    for (int i = 0; i < inst.terminal_count(); ++i) {
        const auto& t = inst.terminal(i);
        for (size_t k = 1; k < t.size(); ++k)
            if (comp_of[t[k]] != comp_of[t[0]]) return TrivialNegative{};
    }

    ComponentSplit split;
    for (const auto& comp : comps) {
        auto ind = inst.graph().induced(comp);
        std::vector<VertexSet> ts;
        std::vector<int> ds;
        for (int i = 0; i < inst.terminal_count(); ++i) {
            const auto& t = inst.terminal(i);
            if (!t.empty() && comp_of[t[0]] == comp_of[comp[0]]) {
                ts.push_back(ind.vmap.image(t));
                ds.push_back(inst.demand(i));
            }
        }
        split.parts.emplace_back(std::move(ind.graph), std::move(ts), std::move(ds));
    }
    return split;
}

}  // namespace gstp
