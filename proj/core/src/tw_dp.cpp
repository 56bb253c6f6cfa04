#include "gstp/tw_dp.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "gstp/fn_ilp.hpp"
#include "gstp/oracle.hpp"

namespace gstp {

const std::vector<VertexSet>& DpTuple::blocks_of(int index) const {
    int pos = 0;
    for (int i = 0; i < index; ++i)
        if (cross >> i & 1) ++pos;
    if (!(cross >> index & 1)) throw std::out_of_range("blocks_of: index not crossing");
    return partitions[pos];
}

std::vector<int> terminal_of_index(const GstpInstance& inst) {
    std::vector<int> out;
    for (int t = 0; t < inst.terminal_count(); ++t)
        for (int i = 0; i < inst.demand(t); ++i) out.push_back(t);
    return out;
}

namespace {

using Blocks = std::vector<VertexSet>;

Blocks canonical_blocks(Blocks b) {
    for (auto& blk : b) std::sort(blk.begin(), blk.end());
    std::sort(b.begin(), b.end());
    return b;
}

DpTuple build_tuple(std::uint32_t bot, std::uint32_t cross, std::map<int, Blocks> blocks) {
    DpTuple t;
    t.bot = bot;
    t.cross = cross;
    for (int i = 0; i < 32; ++i)
        if (cross >> i & 1) t.partitions.push_back(canonical_blocks(std::move(blocks[i])));
    return t;
}

std::map<int, Blocks> blocks_by_index(const DpTuple& t) {
    std::map<int, Blocks> out;
    int pos = 0;
    for (int i = 0; i < 32; ++i)
        if (t.cross >> i & 1) out[i] = t.partitions[pos++];
    return out;
}

// connected components of a hypergraph given by its (nonempty) edges;
// extra_vertex, when >= 0, participates as a vertex even if isolated
Blocks hyper_components(const std::vector<VertexSet>& edges, Vertex extra_vertex = -1) {
    std::map<Vertex, Vertex> parent;
    std::function<Vertex(Vertex)> find = [&](Vertex v) {
        if (parent.find(v) == parent.end()) parent[v] = v;
        return parent[v] == v ? v : parent[v] = find(parent[v]);
    };
    if (extra_vertex >= 0) find(extra_vertex);
    for (const auto& e : edges) {
        for (size_t i = 0; i < e.size(); ++i) find(e[i]);
        for (size_t i = 1; i < e.size(); ++i) parent[find(e[0])] = find(e[i]);
    }
    std::map<Vertex, VertexSet> comps;
    for (const auto& [v, p] : parent) comps[find(v)].push_back(v);
    Blocks out;
    for (auto& [root, comp] : comps) out.push_back(make_vertex_set(comp));
    return out;
}

std::uint32_t full_mask(int n) {
    return n >= 32 ? ~0u : ((1u << n) - 1);
}

}  // namespace

DpTable dp_leaf(int total_demand) {
    if (total_demand > 31) throw CapExceeded("dp_leaf: more than 31 tree indices");
    DpTable out;
    std::uint32_t all = full_mask(total_demand);
    for (std::uint32_t s = 0;; ++s) {  // contiguous mask: every value <= all is a submask
        std::map<int, Blocks> empty;
        out.insert(build_tuple(0, s, std::move(empty)));
        if (s == all) break;
    }
    return out;
}

namespace {

template <typename Sink>
void gen_introduce(const DpTuple& tau, Vertex v, std::uint32_t forced, std::uint32_t all,
                   Sink&& sink) {
    std::uint32_t pool = (tau.cross | (all & ~(tau.bot | tau.cross)));
    if ((forced & pool) != forced) return;  // some forced index already finished below
    // descending submask enumeration of pool, including the empty set
    std::uint32_t s = pool;
    for (;;) {
        if ((s & forced) == forced) {
            auto blocks = blocks_by_index(tau);
            std::uint32_t cross = tau.cross | s;
            for (int i = 0; i < 32; ++i)
                if (s >> i & 1) blocks[i].push_back({v});
            sink(build_tuple(tau.bot, cross, std::move(blocks)), s);
        }
        if (s == 0) break;
        s = (s - 1) & pool;
    }
}

template <typename Sink>
void gen_forget(const DpTuple& tau, Vertex v, const std::vector<Edge>& ev,
                const std::vector<char>& below, const std::vector<int>& term_of_index,
                const GstpInstance& inst, Sink&& sink) {
    std::vector<int> cross_list;
    for (int i = 0; i < 32; ++i)
        if (tau.cross >> i & 1) cross_list.push_back(i);

    size_t k = ev.size();
    std::vector<int> lambda(k, -1);  // -1 = unused, otherwise position into cross_list
    for (;;) {
        // apply this distribution
        auto blocks = blocks_by_index(tau);
        bool ok = true;
        std::uint32_t new_bot = tau.bot, new_cross = tau.cross;
        std::map<int, Blocks> out_blocks;
        for (int idx : cross_list) {
            std::vector<VertexSet> edges = blocks[idx];
            for (size_t e = 0; e < k; ++e)
                if (lambda[e] >= 0 && cross_list[lambda[e]] == idx)
                    edges.push_back(make_vertex_set({ev[e].u, ev[e].v}));
            bool involves_v = false;
            for (const auto& blk : edges)
                involves_v |= std::binary_search(blk.begin(), blk.end(), v);
            if (edges.empty()) {
                out_blocks[idx] = {};
                continue;
            }
            Blocks comps = hyper_components(edges, involves_v ? v : -1);
            Blocks stripped;
            bool empty_comp = false;
            for (auto& c : comps) {
                VertexSet s;
                for (Vertex w : c)
                    if (w != v) s.push_back(w);
                if (s.empty()) empty_comp = true;
                else stripped.push_back(std::move(s));
            }
            if (empty_comp && !stripped.empty()) {
                // a forest piece lost its last bag contact while others remain
                ok = false;
                break;
            }
            if (empty_comp && stripped.empty()) {
                // the tree closed up below this node
                const auto& term = inst.terminal(term_of_index[idx]);
                bool contained = true;
                for (Vertex t : term) contained &= below[t] != 0;
                if (!contained) {
                    ok = false;
                    break;
                }
                new_bot |= 1u << idx;
                new_cross &= ~(1u << idx);
            } else {
                out_blocks[idx] = std::move(stripped);
            }
        }
        if (ok) {
            std::map<int, Blocks> final_blocks;
            for (int idx : cross_list)
                if (new_cross >> idx & 1) final_blocks[idx] = std::move(out_blocks[idx]);
            std::vector<std::pair<Edge, int>> assigned;
            for (size_t e = 0; e < k; ++e)
                if (lambda[e] >= 0) assigned.push_back({ev[e], cross_list[lambda[e]]});
            sink(build_tuple(new_bot, new_cross, std::move(final_blocks)), std::move(assigned));
        }

        // advance lambda odometer
        size_t e = 0;
        while (e < k && lambda[e] == static_cast<int>(cross_list.size()) - 1) lambda[e++] = -1;
        if (e == k) break;
        ++lambda[e];
    }
}

DpTuple join_merge(const DpTuple& a, const DpTuple& b) {
    auto ba = blocks_by_index(a);
    auto bb = blocks_by_index(b);
    std::map<int, Blocks> merged;
    for (int i = 0; i < 32; ++i) {
        if (!(a.cross >> i & 1)) continue;
        std::vector<VertexSet> edges = ba[i];
        for (const auto& blk : bb[i]) edges.push_back(blk);
        merged[i] = hyper_components(edges);
    }
    return build_tuple(a.bot | b.bot, a.cross, std::move(merged));
}

}  // namespace

DpTable dp_introduce(const DpTable& table, Vertex v, const std::vector<int>& term_of_index,
                     const GstpInstance& inst) {
    std::uint32_t forced = 0;
    for (size_t i = 0; i < term_of_index.size(); ++i) {
        const auto& t = inst.terminal(term_of_index[i]);
        if (std::binary_search(t.begin(), t.end(), v)) forced |= 1u << i;
    }
    DpTable out;
    for (const auto& tau : table)
        gen_introduce(tau, v, forced, full_mask(static_cast<int>(term_of_index.size())),
                      [&](DpTuple t, std::uint32_t) { out.insert(std::move(t)); });
    return out;
}

DpTable dp_join(const DpTable& a, const DpTable& b) {
    std::map<std::uint32_t, std::vector<const DpTuple*>> by_cross;
    for (const auto& t : b) by_cross[t.cross].push_back(&t);
    DpTable out;
    for (const auto& ta : a)
        for (const DpTuple* tb : by_cross[ta.cross]) out.insert(join_merge(ta, *tb));
    return out;
}

DpTable dp_forget(const DpTable& table, Vertex v, const std::vector<Vertex>& bag_after,
                  const std::vector<Edge>& edges_to_bag, const std::vector<char>& below,
                  const std::vector<int>& term_of_index, const GstpInstance& inst) {
    (void)bag_after;
    DpTable out;
    for (const auto& tau : table)
        gen_forget(tau, v, edges_to_bag, below, term_of_index, inst,
                   [&](DpTuple t, std::vector<std::pair<Edge, int>>) { out.insert(std::move(t)); });
    return out;
}

namespace {

struct Prov {
    std::vector<DpTuple> children;
    std::uint32_t smask = 0;
    std::vector<std::pair<Edge, int>> lambda;
};

struct NodeTable {
    std::map<DpTuple, Prov> entries;
};

}  // namespace

TwDpResult decide_tw(const GstpInstance& inst, const std::optional<TreeDecomposition>& supplied,
                     const TwDpConfig& cfg) {
    GstpInstance red = apply_rr_sensible(inst);
    // map reduced terminal indices back onto the original instance
    std::vector<int> orig_of_red(red.terminal_count());
    {
        int j = 0;
        for (int i = 0; i < red.terminal_count(); ++i) {
            while (inst.terminal(j) != red.terminal(i)) ++j;
            orig_of_red[i] = j++;
        }
    }

    int sigma = red.total_demand();
    if (sigma > cfg.total_demand_cap)
        throw CapExceeded("decide_tw: total demand " + std::to_string(sigma) + " exceeds cap " +
                          std::to_string(cfg.total_demand_cap));

    TreeDecomposition base;
    if (supplied) {
        auto rep = validate_tree_decomposition(*supplied, inst.graph());
        if (!rep) throw std::invalid_argument("decide_tw: " + rep.violation);
        base = *supplied;
    } else {
        base = tree_decomposition(inst.graph(), cfg.exact_tw_cap);
    }
    if (base.width() > cfg.width_cap)
        throw CapExceeded("decide_tw: width " + std::to_string(base.width()) + " exceeds cap " +
                          std::to_string(cfg.width_cap));
    TreeDecomposition nice = make_nice(base, inst.graph());

    auto term_of = terminal_of_index(red);
    const Graph& g = red.graph();

    // vertices at or below each node
    std::vector<std::vector<char>> below(nice.node_count(),
                                         std::vector<char>(g.vertex_count(), 0));
    auto order = nice.topo_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int n = *it;
        for (Vertex v : nice.nodes[n].bag) below[n][v] = 1;
        for (int c : nice.nodes[n].children)
            for (Vertex v = 0; v < g.vertex_count(); ++v) below[n][v] |= below[c][v];
    }

    TwDpResult result;
    result.width_used = base.width();
    result.table_sizes.assign(nice.node_count(), 0);

    std::vector<NodeTable> tables(nice.node_count());
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int n = *it;
        const TdNode& node = nice.nodes[n];
        NodeTable& out = tables[n];
        switch (node.kind) {
            case TdNodeKind::Leaf: {
                for (const auto& t : dp_leaf(sigma)) out.entries.emplace(t, Prov{});
                break;
            }
            case TdNodeKind::Introduce: {
                int c = node.children.at(0);
                std::uint32_t forced = 0;
                for (size_t i = 0; i < term_of.size(); ++i) {
                    const auto& t = red.terminal(term_of[i]);
                    if (std::binary_search(t.begin(), t.end(), node.pivot)) forced |= 1u << i;
                }
                for (const auto& [tau, prov] : tables[c].entries)
                    gen_introduce(tau, node.pivot, forced, full_mask(sigma),
                                  [&](DpTuple t, std::uint32_t s) {
                        if (cfg.want_witness && !out.entries.count(t))
                            out.entries.emplace(std::move(t), Prov{{tau}, s, {}});
                        else out.entries.emplace(std::move(t), Prov{});
                    });
                break;
            }
            case TdNodeKind::Forget: {
                int c = node.children.at(0);
                std::vector<Edge> ev;
                for (Vertex x : node.bag)
                    if (g.has_edge(node.pivot, x)) ev.push_back(Edge(node.pivot, x));
                for (const auto& [tau, prov] : tables[c].entries)
                    gen_forget(tau, node.pivot, ev, below[c], term_of, red,
                               [&](DpTuple t, std::vector<std::pair<Edge, int>> lam) {
                        if (cfg.want_witness && !out.entries.count(t))
                            out.entries.emplace(std::move(t), Prov{{tau}, 0, std::move(lam)});
                        else out.entries.emplace(std::move(t), Prov{});
                    });
                break;
            }
            case TdNodeKind::Join: {
                int a = node.children.at(0), b = node.children.at(1);
                std::map<std::uint32_t, std::vector<const DpTuple*>> by_cross;
                for (const auto& [t, p] : tables[b].entries) by_cross[t.cross].push_back(&t);
                for (const auto& [ta, pa] : tables[a].entries)
                    for (const DpTuple* tb : by_cross[ta.cross]) {
                        DpTuple merged = join_merge(ta, *tb);
                        if (cfg.want_witness && !out.entries.count(merged))
                            out.entries.emplace(std::move(merged), Prov{{ta, *tb}, 0, {}});
                        else out.entries.emplace(std::move(merged), Prov{});
                    }
                break;
            }
            default:
                throw std::logic_error("decide_tw: untyped node in nice decomposition");
        }
        result.table_sizes[n] = out.entries.size();
        result.max_table = std::max(result.max_table, out.entries.size());
        // children tables of processed nodes stay alive for witness walks
        if (!cfg.want_witness)
            for (int c : node.children) tables[c].entries.clear();
    }

    DpTuple target;
    target.bot = full_mask(sigma);
    if (!tables[nice.root].entries.count(target)) {
        result.decision = TwDecision::Infeasible;
        return result;
    }
    result.decision = TwDecision::Feasible;
    if (!cfg.want_witness) return result;

    // walk the provenance records, collecting the edges handed to each
    // tree index at forget nodes
    std::vector<std::vector<Edge>> tree_edges(sigma);
    std::function<std::vector<std::vector<Edge>>(int, const DpTuple&)> walk =
        [&](int n, const DpTuple& t) -> std::vector<std::vector<Edge>> {
        const TdNode& node = nice.nodes[n];
        auto it = tables[n].entries.find(t);
        if (it == tables[n].entries.end())
            throw std::logic_error("decide_tw: witness tuple missing");
        const Prov& prov = it->second;
        std::vector<std::vector<Edge>> acc(sigma);
        if (node.kind == TdNodeKind::Leaf) return acc;
        if (node.kind == TdNodeKind::Join) {
            auto ea = walk(node.children[0], prov.children[0]);
            auto eb = walk(node.children[1], prov.children[1]);
            const DpTuple& ca = prov.children[0];
            const DpTuple& cb = prov.children[1];
            for (int i = 0; i < sigma; ++i) {
                if (ca.bot >> i & 1) acc[i] = ea[i];
                else if (cb.bot >> i & 1) acc[i] = eb[i];
                else {
                    acc[i] = ea[i];
                    acc[i].insert(acc[i].end(), eb[i].begin(), eb[i].end());
                }
            }
            return acc;
        }
        acc = walk(node.children[0], prov.children[0]);
        for (const auto& [e, idx] : prov.lambda) acc[idx].push_back(e);
        return acc;
    };
    tree_edges = walk(nice.root, target);

    Solution sol;
    for (int i = 0; i < sigma; ++i) {
        SolutionPart part;
        part.terminal_index = orig_of_red[term_of[i]];
        part.edges = tree_edges[i];
        std::sort(part.edges.begin(), part.edges.end());
        sol.parts.push_back(std::move(part));
    }
    // terminal sets dropped by the sensible-set reduction get trivial trees
    for (int t = 0; t < inst.terminal_count(); ++t) {
        if (inst.terminal(t).size() >= 2) continue;
        for (int i = 0; i < inst.demand(t); ++i) sol.parts.push_back({{}, t});
    }
    auto check = verify(inst, sol);
    if (!check) throw std::logic_error("decide_tw: witness failed verification: " + check.violation);
    result.witness = std::move(sol);
    return result;
}

DispatchResult stp_dispatch(const StpInstance& stp, const DispatchConfig& cfg) {
    GstpInstance inst = from_stp(stp);

    // treewidth + demand route
    try {
        TwDpResult r = decide_tw(inst, std::nullopt, cfg.twdp);
        return {r.decision, "twdp"};
    } catch (const CapExceeded&) {
    }
    // fracture-number route
    try {
        FnIlpConfig fc;
        fc.max_modulator = cfg.fnilp_modulator_cap;
        fc.max_ts = cfg.fnilp_ts_cap;
        Decision d = decide_by_fracture(inst, fc);
        return {d == Decision::Feasible ? TwDecision::Feasible : TwDecision::Infeasible, "fnilp"};
    } catch (const CapExceeded&) {
    }
    // exhaustive fallback
    OracleConfig oc;
    oc.edge_budget = cfg.oracle_edge_budget;
    oc.demand_budget = cfg.oracle_demand_budget;
    OracleResult r = solve_exact(inst, oc);
    if (r.status == OracleStatus::BudgetExceeded)
        throw CapExceeded("stp_dispatch: no solver applicable at this scale");
    return {r.feasible() ? TwDecision::Feasible : TwDecision::Infeasible, "oracle"};
}

}  // namespace gstp
