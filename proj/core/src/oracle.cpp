#include "gstp/oracle.hpp"

#include <algorithm>
#include <map>

#include "gstp/params.hpp"

namespace gstp {

namespace {

using Mask = std::uint64_t;

struct EdgeIndex {
    std::vector<Edge> edges;  // sorted

    int id(const Edge& e) const {
        auto it = std::lower_bound(edges.begin(), edges.end(), e);
        return static_cast<int>(it - edges.begin());
    }
};

EdgeIndex index_edges(const Graph& g) {
    EdgeIndex idx;
    for (const auto& [e, m] : g.edges())
        if (!e.loop()) idx.edges.push_back(e);
    return idx;
}

// Union-find over vertices touched by masked edges; returns true when the
// masked edge set is connected and covers all of `terminal`.
bool mask_connected_containing(const EdgeIndex& idx, Mask mask, const VertexSet& terminal,
                               int vertex_count) {
    std::vector<int> parent(vertex_count, -1);
    auto find = [&](int v) {
        while (parent[v] >= 0 && parent[parent[v]] >= 0) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return parent[v] >= 0 ? parent[v] : v;
    };
    std::vector<char> touched(vertex_count, 0);
    int edge_cnt = 0;
    for (size_t i = 0; i < idx.edges.size(); ++i) {
        if (!(mask >> i & 1)) continue;
        ++edge_cnt;
        const Edge& e = idx.edges[i];
        touched[e.u] = touched[e.v] = 1;
        int a = find(e.u), b = find(e.v);
        if (a != b) parent[a] = b;
    }
    if (edge_cnt == 0) return terminal.size() <= 1;
    for (Vertex t : terminal)
        if (!touched[t]) return false;
    int root = -1;
    for (Vertex v = 0; v < vertex_count; ++v) {
        if (!touched[v]) continue;
        int r = find(v);
        if (root < 0) root = r;
        else if (r != root) return false;
    }
    return true;
}

bool mask_is_tree_with_terminal_leaves(const EdgeIndex& idx, Mask mask, const VertexSet& terminal,
                                       int vertex_count) {
    std::vector<int> deg(vertex_count, 0);
    int edges = 0, verts = 0;
    for (size_t i = 0; i < idx.edges.size(); ++i) {
        if (!(mask >> i & 1)) continue;
        ++edges;
        ++deg[idx.edges[i].u];
        ++deg[idx.edges[i].v];
    }
    std::vector<char> in_t(vertex_count, 0);
    for (Vertex t : terminal) in_t[t] = 1;
    for (Vertex v = 0; v < vertex_count; ++v) {
        if (deg[v] == 0) continue;
        ++verts;
        if (deg[v] == 1 && !in_t[v]) return false;  // non-terminal leaf: not minimal
    }
    return edges == verts - 1;  // connected already checked by caller
}

}  // namespace

std::vector<std::vector<Edge>> minimal_steiner_trees(const Graph& g, const VertexSet& terminal) {
    EdgeIndex idx = index_edges(g);
    size_t m = idx.edges.size();
    if (m > 30) throw CapExceeded("minimal_steiner_trees: more than 30 edges");
    std::vector<std::vector<Edge>> out;
    for (Mask mask = 1; mask < (Mask{1} << m); ++mask) {
        if (!mask_connected_containing(idx, mask, terminal, g.vertex_count())) continue;
        if (!mask_is_tree_with_terminal_leaves(idx, mask, terminal, g.vertex_count())) continue;
        std::vector<Edge> tree;
        for (size_t i = 0; i < m; ++i)
            if (mask >> i & 1) tree.push_back(idx.edges[i]);
        out.push_back(std::move(tree));
    }
    return out;
}

namespace {

struct Searcher {
    const EdgeIndex& idx;
    const std::vector<std::vector<Mask>>& candidates;  // per slot, sorted ascending
    const std::vector<int>& slot_terminal;             // terminal index per slot
    std::optional<std::chrono::steady_clock::time_point> deadline;
    bool timed_out = false;
    long nodes = 0;

    std::vector<Mask> chosen;

    bool search(size_t slot, Mask used) {
        if (deadline && ++nodes % 4096 == 0 &&
            std::chrono::steady_clock::now() > *deadline) {
            timed_out = true;
            return false;
        }
        if (slot == candidates.size()) return true;
        // symmetry breaking: within a run of equal terminal sets, the
        // canonical tree masks must strictly increase
        const auto& cand = candidates[slot];
        size_t start = 0;
        if (slot > 0 && slot_terminal[slot] == slot_terminal[slot - 1])
            start = static_cast<size_t>(
                std::upper_bound(cand.begin(), cand.end(), chosen[slot - 1]) - cand.begin());
        for (size_t i = start; i < cand.size(); ++i) {
            if (cand[i] & used) continue;
            chosen[slot] = cand[i];
            if (search(slot + 1, used | cand[i])) return true;
            if (timed_out) return false;
        }
        return false;
    }
};

}  // namespace

OracleResult solve_exact(const GstpInstance& inst, const OracleConfig& cfg) {
    const Graph& g = inst.graph();
    if (g.edge_count() > cfg.edge_budget) return {OracleStatus::BudgetExceeded, std::nullopt};
    if (inst.total_demand() > cfg.demand_budget) return {OracleStatus::BudgetExceeded, std::nullopt};

    EdgeIndex idx = index_edges(g);

    Solution sol;
    std::vector<int> slot_terminal;
    for (int t = 0; t < inst.terminal_count(); ++t) {
        if (inst.terminal(t).size() <= 1) {
            // single-vertex (or empty) trees satisfy these directly
            for (int i = 0; i < inst.demand(t); ++i) sol.parts.push_back({{}, t});
            continue;
        }
        for (int i = 0; i < inst.demand(t); ++i) slot_terminal.push_back(t);
    }

    std::map<int, std::vector<Mask>> trees_by_terminal;
    for (int t : slot_terminal) {
        if (trees_by_terminal.count(t)) continue;
        std::vector<Mask> masks;
        for (const auto& tree : minimal_steiner_trees(g, inst.terminal(t))) {
            Mask m = 0;
            for (const Edge& e : tree) m |= Mask{1} << idx.id(e);
            masks.push_back(m);
        }
        std::sort(masks.begin(), masks.end());
        trees_by_terminal[t] = std::move(masks);
    }

    std::vector<std::vector<Mask>> candidates;
    for (int t : slot_terminal) candidates.push_back(trees_by_terminal[t]);

    Searcher s{idx, candidates, slot_terminal, std::nullopt, false, 0, {}};
    if (cfg.time_budget) s.deadline = std::chrono::steady_clock::now() + *cfg.time_budget;
    s.chosen.resize(candidates.size());

    if (!s.search(0, 0)) {
        if (s.timed_out) return {OracleStatus::BudgetExceeded, std::nullopt};
        return {OracleStatus::Infeasible, std::nullopt};
    }
    for (size_t slot = 0; slot < candidates.size(); ++slot) {
        SolutionPart part;
        part.terminal_index = slot_terminal[slot];
        for (size_t i = 0; i < idx.edges.size(); ++i)
            if (s.chosen[slot] >> i & 1) part.edges.push_back(idx.edges[i]);
        sol.parts.push_back(std::move(part));
    }
    return {OracleStatus::Feasible, std::move(sol)};
}

}  // namespace gstp
