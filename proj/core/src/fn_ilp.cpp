#include "gstp/fn_ilp.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "gstp/oracle.hpp"

namespace gstp {

namespace {

std::string vset_name(const VertexSet& u) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < u.size(); ++i) os << (i ? "," : "") << u[i];
    os << "}";
    return os.str();
}

std::vector<VertexSet> subsets_of(const VertexSet& base, size_t min_size) {
    std::vector<VertexSet> out;
    size_t n = base.size();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        VertexSet s;
        for (size_t i = 0; i < n; ++i)
            if (mask >> i & 1) s.push_back(base[i]);
        if (s.size() >= min_size) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_subset(const VertexSet& a, const VertexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_intersect(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

ModulatorContext make_context(GstpInstance inst, std::vector<Vertex> modulator) {
    ModulatorContext ctx;
    ctx.inst = std::move(inst);
    ctx.aug = augment(ctx.inst, AugmentMode::Vertex);
    std::sort(modulator.begin(), modulator.end());
    ctx.modulator = std::move(modulator);
    int host_n = ctx.inst.graph().vertex_count();
    for (Vertex v : ctx.modulator) {
        if (v < 0 || v >= ctx.aug.graph.vertex_count())
            throw std::invalid_argument("make_context: modulator vertex out of range");
        if (v < host_n) ctx.modulator_real.push_back(v);
    }
    std::set<Vertex> in_s(ctx.modulator.begin(), ctx.modulator.end());
    for (int t = 0; t < ctx.inst.terminal_count(); ++t) {
        if (in_s.count(ctx.aug.aug_vertex_of[t])) ctx.ts_terminals.push_back(t);
        if (is_subset(ctx.inst.terminal(t), ctx.modulator_real)) ctx.tstar_terminals.push_back(t);
    }
    int two_s = 2 * static_cast<int>(ctx.modulator.size());
    ctx.u = two_s * (two_s - 1) / 2;
    return ctx;
}

std::vector<AugComponent> modulator_components(const ModulatorContext& ctx) {
    auto rem = ctx.aug.graph.remove_vertices(ctx.modulator);
    // invert the renumbering
    std::vector<Vertex> back(rem.graph.vertex_count(), -1);
    for (Vertex v = 0; v < ctx.aug.graph.vertex_count(); ++v)
        if (rem.vmap.map[v] >= 0) back[rem.vmap.map[v]] = v;
    std::vector<AugComponent> out;
    for (const auto& comp : rem.graph.components()) {
        AugComponent c;
        for (Vertex v : comp) c.vertices.push_back(back[v]);
        std::sort(c.vertices.begin(), c.vertices.end());
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

// terminal indices anchored in the component: T with aug(T) in V(C)
std::vector<int> component_terminals(const ModulatorContext& ctx, const AugComponent& comp) {
    std::set<Vertex> in_c(comp.vertices.begin(), comp.vertices.end());
    std::vector<int> out;
    for (int t = 0; t < ctx.inst.terminal_count(); ++t)
        if (in_c.count(ctx.aug.aug_vertex_of[t])) out.push_back(t);
    return out;
}

// the assign sets of one (terminal, tree) pair under sigma:
// { U cup sigma(j : assign(t,i,j) = U) : U nonempty value }
std::vector<VertexSet> assign_sets(const Configuration& conf, const std::vector<Vertex>& sigma,
                                   int t, int i) {
    std::map<VertexSet, VertexSet> a_of;  // value U -> A(t,i,U,sigma)
    for (int j = 0; j < static_cast<int>(sigma.size()); ++j) {
        auto it = conf.assign.find({t, i, j});
        if (it == conf.assign.end()) continue;
        a_of[it->second].push_back(sigma[j]);
    }
    std::vector<VertexSet> out;
    for (auto& [u, a] : a_of) out.push_back(set_union(u, make_vertex_set(a)));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int distinct_assign_values(const Configuration& conf, int t, int i, int slots) {
    std::set<VertexSet> vals;
    for (int j = 0; j < slots; ++j) {
        auto it = conf.assign.find({t, i, j});
        if (it != conf.assign.end()) vals.insert(it->second);
    }
    return static_cast<int>(vals.size());
}

}  // namespace

ComponentInstance component_instance(const ModulatorContext& ctx, const AugComponent& comp,
                                     const Configuration& conf, const std::vector<Vertex>& sigma) {
    // sigma must be a surjection [|S|] -> V(C)
    if (sigma.size() != ctx.modulator.size())
        throw std::invalid_argument("component_instance: sigma arity != |S|");
    std::set<Vertex> image(sigma.begin(), sigma.end());
    if (image != std::set<Vertex>(comp.vertices.begin(), comp.vertices.end()))
        throw std::invalid_argument("component_instance: sigma not onto the component");

    std::vector<Vertex> cplus = set_union(make_vertex_set(comp.vertices),
                                          make_vertex_set(ctx.modulator));
    ComponentInstance out;
    out.local_of_aug.assign(ctx.aug.graph.vertex_count(), -1);
    for (size_t i = 0; i < cplus.size(); ++i) out.local_of_aug[cplus[i]] = static_cast<int>(i);
    out.fresh_start = static_cast<int>(cplus.size());

    int fresh_total = 0;
    for (const auto& [u, d] : conf.demand) fresh_total += d;

    Graph host(out.fresh_start + fresh_total, false);
    int host_n = ctx.host_n();
    // only host-graph edges carry connections; augmented vertices stay isolated
    for (size_t a = 0; a < cplus.size(); ++a)
        for (size_t b = a + 1; b < cplus.size(); ++b) {
            Vertex x = cplus[a], y = cplus[b];
            if (x < host_n && y < host_n && ctx.inst.graph().has_edge(x, y))
                host.add_edge(static_cast<int>(a), static_cast<int>(b));
        }
    int next_fresh = out.fresh_start;
    for (const auto& [u, d] : conf.demand)
        for (int rep = 0; rep < d; ++rep, ++next_fresh)
            for (Vertex s : u) host.add_edge(next_fresh, out.local_of_aug[s]);

    // accumulate terminal demands: Q sets, supply sets, assign sets
    std::map<VertexSet, int> want;  // local-index terminal set -> demand
    auto localize = [&](const VertexSet& s) {
        VertexSet out_set;
        for (Vertex v : s) out_set.push_back(out.local_of_aug[v]);
        return make_vertex_set(std::move(out_set));
    };
    std::set<Vertex> in_c(comp.vertices.begin(), comp.vertices.end());
    for (int t : component_terminals(ctx, comp)) {
        bool touches = false;
        for (Vertex v : ctx.inst.terminal(t)) touches |= in_c.count(v) > 0;
        if (touches) want[localize(ctx.inst.terminal(t))] += ctx.inst.demand(t);
    }
    std::set<VertexSet> supply_local;
    for (const auto& [u, s] : conf.supply) {
        if (s <= 0) continue;
        VertexSet loc = localize(u);
        want[loc] += s;
        supply_local.insert(loc);
    }
    for (int t : ctx.ts_terminals)
        for (int i = 0; i < ctx.inst.demand(t); ++i)
            for (const auto& aset : assign_sets(conf, sigma, t, i)) want[localize(aset)] += 1;

    std::vector<VertexSet> ts;
    std::vector<int> ds;
    for (const auto& [set, d] : want) {
        ts.push_back(set);
        ds.push_back(d);
    }
    out.instance = GstpInstance(std::move(host), std::move(ts), std::move(ds));
    for (int i = 0; i < out.instance.terminal_count(); ++i)
        if (supply_local.count(out.instance.terminal(i)))
            out.supply_terminals.push_back(i);
    return out;
}

namespace {

using Mask = std::uint64_t;

// Edge-disjoint packing with the admission side conditions: supply trees
// avoid fresh vertices, fresh vertices are covered by exactly one tree,
// every tree uses a component edge.
struct AdmissionSearch {
    std::vector<std::vector<std::pair<Mask, Mask>>> cand;  // per slot: (edges, fresh verts)
    std::vector<int> slot_term;
    Mask all_fresh = 0;

    std::vector<size_t> chosen;

    bool run() {
        chosen.assign(slot_term.size(), 0);
        return step(0, 0, 0);
    }

    bool step(size_t slot, Mask used_edges, Mask used_fresh) {
        if (slot == slot_term.size()) return used_fresh == all_fresh;
        const auto& c = cand[slot];
        size_t start = 0;
        if (slot > 0 && slot_term[slot] == slot_term[slot - 1]) start = chosen[slot - 1] + 1;
        for (size_t i = start; i < c.size(); ++i) {
            auto [em, fm] = c[i];
            if (em & used_edges) continue;
            if (fm & used_fresh) continue;  // a fresh vertex sits in at most one tree
            chosen[slot] = i;
            if (step(slot + 1, used_edges | em, used_fresh | fm)) return true;
        }
        return false;
    }
};

// candidate trees per (demand map, local terminal set); masks share the
// edge indexing of the host built from the same demand map
struct AdmissionCache {
    std::map<std::map<VertexSet, int>,
             std::map<VertexSet, std::vector<std::tuple<Mask, Mask, bool>>>>
        trees;  // (edge mask, fresh-vertex mask, touches_fresh)
};

bool admits_with_sigma(const ModulatorContext& ctx, const AugComponent& comp,
                       const Configuration& conf, const std::vector<Vertex>& sigma,
                       const FnIlpConfig& cfg, AdmissionCache& cache) {
    // condition: every slot hitting a terminal vertex of T_S inside the
    // component must carry a nonempty assignment for every tree index
    std::set<Vertex> in_c(comp.vertices.begin(), comp.vertices.end());
    for (int t : ctx.ts_terminals) {
        std::set<Vertex> tv(ctx.inst.terminal(t).begin(), ctx.inst.terminal(t).end());
        for (int j = 0; j < static_cast<int>(sigma.size()); ++j) {
            if (!tv.count(sigma[j])) continue;
            for (int i = 0; i < ctx.inst.demand(t); ++i)
                if (!conf.assign.count({t, i, j})) return false;
        }
    }

    ComponentInstance ci = component_instance(ctx, comp, conf, sigma);
    const Graph& host = ci.instance.graph();
    if (host.edge_count() > cfg.max_host_edges)
        throw CapExceeded("admits: component host exceeds " + std::to_string(cfg.max_host_edges) +
                          " edges");

    // index edges as in minimal_steiner_trees (sorted order)
    std::vector<Edge> eidx;
    for (const auto& [e, m] : host.edges()) eidx.push_back(e);

    Mask all_fresh = 0;
    for (Vertex v = ci.fresh_start; v < host.vertex_count(); ++v)
        all_fresh |= Mask{1} << (v - ci.fresh_start);

    auto& by_terminal = cache.trees[conf.demand];
    auto candidate_trees = [&](const VertexSet& terminal)
        -> const std::vector<std::tuple<Mask, Mask, bool>>& {
        auto it = by_terminal.find(terminal);
        if (it != by_terminal.end()) return it->second;
        std::vector<std::tuple<Mask, Mask, bool>> masks;
        for (const auto& tree : minimal_steiner_trees(host, terminal)) {
            Mask em = 0, fm = 0;
            bool has_real = false, touches_fresh = false;
            for (const Edge& e : tree) {
                size_t id = static_cast<size_t>(
                    std::lower_bound(eidx.begin(), eidx.end(), e) - eidx.begin());
                em |= Mask{1} << id;
                if (e.u < ci.fresh_start && e.v < ci.fresh_start) has_real = true;
                for (Vertex v : {e.u, e.v})
                    if (v >= ci.fresh_start) {
                        touches_fresh = true;
                        fm |= Mask{1} << (v - ci.fresh_start);
                    }
            }
            if (!has_real) continue;  // every tree must use a component edge
            masks.push_back({em, fm, touches_fresh});
        }
        std::sort(masks.begin(), masks.end());
        return by_terminal.emplace(terminal, std::move(masks)).first->second;
    };

    std::set<int> supply_set(ci.supply_terminals.begin(), ci.supply_terminals.end());

    AdmissionSearch search;
    search.all_fresh = all_fresh;
    for (int t = 0; t < ci.instance.terminal_count(); ++t) {
        const auto& cached = candidate_trees(ci.instance.terminal(t));
        std::vector<std::pair<Mask, Mask>> masks;
        for (const auto& [em, fm, touches_fresh] : cached) {
            if (supply_set.count(t) && touches_fresh) continue;
            masks.push_back({em, fm});
        }
        if (masks.empty() && ci.instance.demand(t) > 0) return false;
        for (int rep = 0; rep < ci.instance.demand(t); ++rep) {
            search.slot_term.push_back(t);
            search.cand.push_back(masks);
        }
    }
    return search.run();
}

void all_surjections(const std::vector<Vertex>& onto, int arity,
                     std::vector<std::vector<Vertex>>& out) {
    std::vector<Vertex> cur(arity);
    std::vector<int> odo(arity, 0);
    int n = static_cast<int>(onto.size());
    if (n == 0 || n > arity) return;
    for (;;) {
        std::set<Vertex> image;
        for (int i = 0; i < arity; ++i) {
            cur[i] = onto[odo[i]];
            image.insert(cur[i]);
        }
        if (static_cast<int>(image.size()) == n) out.push_back(cur);
        int i = arity - 1;
        while (i >= 0 && odo[i] == n - 1) odo[i--] = 0;
        if (i < 0) break;
        ++odo[i];
    }
}

}  // namespace

bool viable(const ModulatorContext& ctx, const Configuration& conf) {
    long dsum = 0, ssum = 0;
    for (const auto& [u, d] : conf.demand) dsum += d;
    for (const auto& [u, s] : conf.supply) ssum += s;
    return dsum <= static_cast<long>(ctx.u) * static_cast<long>(ctx.modulator.size()) &&
           ssum <= ctx.u;
}

namespace {

bool admits_cached(const ModulatorContext& ctx, const AugComponent& comp,
                   const Configuration& conf, const FnIlpConfig& cfg, AdmissionCache& cache) {
    std::vector<std::vector<Vertex>> sigmas;
    all_surjections(comp.vertices, static_cast<int>(ctx.modulator.size()), sigmas);
    for (const auto& sigma : sigmas)
        if (admits_with_sigma(ctx, comp, conf, sigma, cfg, cache)) return true;
    return false;
}

}  // namespace

bool admits(const ModulatorContext& ctx, const AugComponent& comp, const Configuration& conf,
            const FnIlpConfig& cfg) {
    AdmissionCache cache;
    return admits_cached(ctx, comp, conf, cfg, cache);
}

namespace {

// enumerate maps base[i] -> value with sum <= budget, all values >= 0;
// only nonzero entries are emitted
void enumerate_maps(const std::vector<VertexSet>& base, size_t idx, int budget,
                    std::map<VertexSet, int>& cur,
                    const std::function<void(const std::map<VertexSet, int>&)>& emit) {
    if (idx == base.size()) {
        emit(cur);
        return;
    }
    enumerate_maps(base, idx + 1, budget, cur, emit);
    for (int v = 1; v <= budget; ++v) {
        cur[base[idx]] = v;
        enumerate_maps(base, idx + 1, budget - v, cur, emit);
    }
    cur.erase(base[idx]);
}

}  // namespace

std::vector<Configuration> signature(const ModulatorContext& ctx, const AugComponent& comp,
                                     const FnIlpConfig& cfg) {
    const int slots = static_cast<int>(ctx.modulator.size());
    const int s_real = static_cast<int>(ctx.modulator_real.size());

    // every tree of the local instance consumes at least one of the
    // component's host edges, so their count bounds everything
    std::vector<Vertex> cplus =
        set_union(make_vertex_set(comp.vertices), make_vertex_set(ctx.modulator));
    int m_c = 0;
    int host_n = ctx.host_n();
    for (size_t a = 0; a < cplus.size(); ++a)
        for (size_t b = a + 1; b < cplus.size(); ++b)
            if (cplus[a] < host_n && cplus[b] < host_n &&
                ctx.inst.graph().has_edge(cplus[a], cplus[b]))
                ++m_c;

    std::set<Vertex> in_c(comp.vertices.begin(), comp.vertices.end());
    int fixed_q = 0;
    for (int t : component_terminals(ctx, comp)) {
        bool touches = false;
        for (Vertex v : ctx.inst.terminal(t)) touches |= in_c.count(v) > 0;
        if (touches) fixed_q += ctx.inst.demand(t);
    }

    std::vector<Configuration> out;
    if (fixed_q > m_c) return out;  // the anchored demands alone do not fit

    std::vector<VertexSet> big_subsets = subsets_of(ctx.modulator_real, 2);
    std::vector<VertexSet> all_values = subsets_of(ctx.modulator_real, 1);  // nonempty values

    std::vector<std::tuple<int, int, int>> assign_keys;
    for (int t : ctx.ts_terminals)
        for (int i = 0; i < ctx.inst.demand(t); ++i)
            for (int j = 0; j < slots; ++j) assign_keys.push_back({t, i, j});

    long budget_cfgs = cfg.max_configs;
    long enumerated = 0;
    AdmissionCache cache;

    // odometer over assign values: index 0 means "unassigned"
    std::vector<size_t> odo(assign_keys.size(), 0);
    const size_t value_count = all_values.size() + 1;
    for (;;) {
        Configuration base;
        for (size_t k = 0; k < assign_keys.size(); ++k)
            if (odo[k] > 0) base.assign[assign_keys[k]] = all_values[odo[k] - 1];

        int hits_total = 0;
        for (int t : ctx.ts_terminals)
            for (int i = 0; i < ctx.inst.demand(t); ++i)
                hits_total += distinct_assign_values(base, t, i, slots);

        if (fixed_q + hits_total <= m_c) {
            int supply_budget = m_c - fixed_q - hits_total;
            std::map<VertexSet, int> scur;
            enumerate_maps(big_subsets, 0, supply_budget, scur,
                           [&](const std::map<VertexSet, int>& sup) {
                int demand_budget = (fixed_q + hits_total) * std::max(0, s_real - 1);
                std::map<VertexSet, int> dcur;
                enumerate_maps(big_subsets, 0, demand_budget, dcur,
                               [&](const std::map<VertexSet, int>& dem) {
                    if (++enumerated > budget_cfgs)
                        throw CapExceeded("signature: configuration enumeration exceeds cap");
                    Configuration conf = base;
                    conf.supply = sup;
                    conf.demand = dem;
                    if (!viable(ctx, conf))
                        throw std::logic_error("signature: enumerated nonviable configuration");
                    if (admits_cached(ctx, comp, conf, cfg, cache)) out.push_back(std::move(conf));
                });
            });
        }

        // advance the odometer
        if (odo.empty()) break;
        size_t k = 0;
        while (k < odo.size() && odo[k] == value_count - 1) odo[k++] = 0;
        if (k == odo.size()) break;
        ++odo[k];
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool indistinguishable(const ModulatorContext& ctx, const AugComponent& a, const AugComponent& b) {
    if (a.vertices.size() != b.vertices.size()) return false;
    int host_n = ctx.host_n();
    const Graph& g = ctx.aug.graph;

    std::vector<Vertex> perm = b.vertices;
    std::sort(perm.begin(), perm.end());
    do {
        // phi maps a.vertices[i] -> perm[i], identity on S
        bool ok = true;
        for (size_t i = 0; i < a.vertices.size() && ok; ++i) {
            Vertex x = a.vertices[i], y = perm[i];
            bool xa = x >= host_n, ya = y >= host_n;
            if (xa != ya) ok = false;
            else if (xa && ctx.inst.demand(x - host_n) != ctx.inst.demand(y - host_n)) ok = false;
        }
        // adjacency inside the components
        for (size_t i = 0; i < a.vertices.size() && ok; ++i)
            for (size_t j = i + 1; j < a.vertices.size() && ok; ++j)
                if (g.has_edge(a.vertices[i], a.vertices[j]) != g.has_edge(perm[i], perm[j]))
                    ok = false;
        // adjacency towards the (pointwise fixed) modulator
        for (size_t i = 0; i < a.vertices.size() && ok; ++i)
            for (Vertex s : ctx.modulator)
                if (g.has_edge(a.vertices[i], s) != g.has_edge(perm[i], s)) {
                    ok = false;
                    break;
                }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

std::vector<ComponentClass> equivalence_classes(const ModulatorContext& ctx,
                                                const std::vector<AugComponent>& comps) {
    std::vector<ComponentClass> classes;
    for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
        bool placed = false;
        for (auto& cls : classes) {
            if (indistinguishable(ctx, comps[cls.members[0]], comps[c])) {
                cls.members.push_back(c);
                placed = true;
                break;
            }
        }
        if (!placed) classes.push_back({{c}});
    }
    return classes;
}

std::vector<std::vector<VertexSet>> minimally_connected_hypergraphs(const VertexSet& u) {
    if (u.size() > 4)
        throw CapExceeded("minimally_connected_hypergraphs: |U| > 4");
    if (u.size() <= 1) return {{}};  // a single vertex (or nothing) is connected edgelessly

    std::vector<VertexSet> cand = subsets_of(u, 2);
    int max_edges = static_cast<int>(u.size()) - 1;

    auto connected = [&](const std::vector<VertexSet>& es) {
        std::map<Vertex, int> id;
        for (size_t i = 0; i < u.size(); ++i) id[u[i]] = static_cast<int>(i);
        std::vector<int> parent(u.size());
        for (size_t i = 0; i < u.size(); ++i) parent[i] = static_cast<int>(i);
        std::function<int(int)> find = [&](int x) {
            return parent[x] == x ? x : parent[x] = find(parent[x]);
        };
        for (const auto& e : es)
            for (size_t i = 1; i < e.size(); ++i) parent[find(id[e[0]])] = find(id[e[i]]);
        int root = find(0);
        for (size_t i = 1; i < u.size(); ++i)
            if (find(static_cast<int>(i)) != root) return false;
        return true;
    };

    std::vector<std::vector<VertexSet>> out;
    size_t n = cand.size();
    std::vector<size_t> pick;
    std::function<void(size_t)> rec = [&](size_t from) {
        if (static_cast<int>(pick.size()) > max_edges) return;
        if (!pick.empty()) {
            std::vector<VertexSet> es;
            for (size_t i : pick) es.push_back(cand[i]);
            if (connected(es)) {
                bool minimal = true;
                for (size_t drop = 0; drop < es.size() && minimal; ++drop) {
                    std::vector<VertexSet> sub;
                    for (size_t i = 0; i < es.size(); ++i)
                        if (i != drop) sub.push_back(es[i]);
                    if (connected(sub)) minimal = false;
                }
                if (minimal) out.push_back(es);
            }
        }
        for (size_t i = from; i < n; ++i) {
            pick.push_back(i);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

bool rho_feasible_with_supply(const VertexSet& s_real,
                              const std::vector<std::pair<VertexSet, int>>& tstar_demands,
                              const std::map<VertexSet, long>& supply) {
    IlpModel m;
    std::vector<VertexSet> all_subsets = subsets_of(s_real, 0);
    std::map<VertexSet, int> svar;
    for (const auto& u : all_subsets) {
        long cap = 0;
        auto it = supply.find(u);
        if (it != supply.end()) cap = it->second;
        svar[u] = m.add_var("s_" + vset_name(u), cap, cap);
    }
    std::map<std::tuple<int, VertexSet, size_t>, int> pvar;
    std::map<std::tuple<int, VertexSet, size_t, VertexSet>, int> qvar;
    for (size_t t = 0; t < tstar_demands.size(); ++t) {
        const auto& [term, d] = tstar_demands[t];
        std::vector<LinTerm> exact;
        for (const auto& u : all_subsets) {
            if (!is_subset(term, u)) continue;
            auto hypers = minimally_connected_hypergraphs(u);
            for (size_t h = 0; h < hypers.size(); ++h) {
                int pv = m.add_var("p_" + std::to_string(t) + "_" + vset_name(u) + "_" +
                                       std::to_string(h),
                                   0, d);
                pvar[{static_cast<int>(t), u, h}] = pv;
                exact.push_back({pv, 1});
                for (const auto& r : hypers[h]) {
                    int qv = m.add_var("q_" + std::to_string(t) + "_" + vset_name(u) + "_" +
                                           std::to_string(h) + "_" + vset_name(r),
                                       0, 1000000);
                    qvar[{static_cast<int>(t), u, h, r}] = qv;
                    m.add_constraint({{qv, 1}, {pv, -1}}, Rel::Ge, 0);
                }
            }
        }
        m.add_constraint(std::move(exact), Rel::Eq, d);
    }
    for (const auto& r : all_subsets) {
        std::vector<LinTerm> terms;
        for (const auto& [key, qv] : qvar)
            if (std::get<3>(key) == r) terms.push_back({qv, 1});
        terms.push_back({svar[r], -1});
        m.add_constraint(std::move(terms), Rel::Le, 0);
    }
    return ilp_feasible(m).has_value();
}

IlpModel build_selector_ilp(const ModulatorContext& ctx, const std::vector<AugComponent>& comps,
                            const std::vector<ComponentClass>& classes,
                            const std::vector<std::vector<Configuration>>& class_signatures) {
    IlpModel m;
    const long n_total = static_cast<long>(comps.size());
    const long s_ub = std::max<long>(1, n_total * ctx.u);
    std::vector<VertexSet> all_subsets = subsets_of(ctx.modulator_real, 0);

    // d_{class, conf}
    std::vector<std::vector<int>> dvar(classes.size());
    for (size_t x = 0; x < classes.size(); ++x) {
        long nx = static_cast<long>(classes[x].members.size());
        for (size_t g = 0; g < class_signatures[x].size(); ++g)
            dvar[x].push_back(
                m.add_var("d_c" + std::to_string(x) + "_" + std::to_string(g), 0, nx));
    }

    // s_U
    std::map<VertexSet, int> svar;
    for (const auto& u : all_subsets) svar[u] = m.add_var("s_" + vset_name(u), 0, s_ub);

    // a_{t,i,U}
    std::map<std::tuple<int, int, VertexSet>, int> avar;
    for (int t : ctx.ts_terminals)
        for (int i = 0; i < ctx.inst.demand(t); ++i)
            for (const auto& u : all_subsets)
                avar[{t, i, u}] = m.add_var("a_t" + std::to_string(t) + "_i" + std::to_string(i) +
                                                "_" + vset_name(u),
                                            0, 1);

    // class count: sum_g d = n_X
    for (size_t x = 0; x < classes.size(); ++x) {
        std::vector<LinTerm> terms;
        for (int v : dvar[x]) terms.push_back({v, 1});
        m.add_constraint(std::move(terms), Rel::Eq,
                         static_cast<long>(classes[x].members.size()));
    }

    // demand/supply balance per subset
    for (const auto& u : all_subsets) {
        std::vector<LinTerm> terms{{svar[u], 1}};
        for (size_t x = 0; x < classes.size(); ++x)
            for (size_t g = 0; g < class_signatures[x].size(); ++g) {
                const auto& conf = class_signatures[x][g];
                long coeff = 0;
                auto dit = conf.demand.find(u);
                if (dit != conf.demand.end()) coeff += dit->second;
                auto sit = conf.supply.find(u);
                if (sit != conf.supply.end()) coeff -= sit->second;
                if (coeff != 0) terms.push_back({dvar[x][g], coeff});
            }
        m.add_constraint(std::move(terms), Rel::Le, 0);
    }

    // link a-indicators with the chosen configurations
    const int slots = static_cast<int>(ctx.modulator.size());
    for (int t : ctx.ts_terminals) {
        for (int i = 0; i < ctx.inst.demand(t); ++i) {
            for (const auto& u : all_subsets) {
                std::vector<LinTerm> lhs;
                for (size_t x = 0; x < classes.size(); ++x)
                    for (size_t g = 0; g < class_signatures[x].size(); ++g) {
                        const auto& conf = class_signatures[x][g];
                        bool has = false;
                        if (u.empty()) {
                            int assigned = 0;
                            for (int j = 0; j < slots; ++j)
                                if (conf.assign.count({t, i, j})) ++assigned;
                            has = assigned < slots;
                        } else {
                            for (int j = 0; j < slots && !has; ++j) {
                                auto it = conf.assign.find({t, i, j});
                                has = it != conf.assign.end() && it->second == u;
                            }
                        }
                        if (has) lhs.push_back({dvar[x][g], 1});
                    }
                int a = avar[{t, i, u}];
                std::vector<LinTerm> lb = lhs;
                lb.push_back({a, -1});
                m.add_constraint(std::move(lb), Rel::Ge, 0);  // sum >= a
                std::vector<LinTerm> ub = lhs;
                ub.push_back({a, -std::max<long>(1, n_total)});
                m.add_constraint(std::move(ub), Rel::Le, 0);  // sum <= N*a
            }
        }
    }

    // rho sub-model: how the terminal sets inside S are assembled from
    // supplied connections
    std::map<std::tuple<int, VertexSet, size_t>, int> pvar;
    std::map<std::tuple<int, VertexSet, size_t, VertexSet>, int> qvar;
    std::map<std::pair<int, VertexSet>, std::vector<std::vector<VertexSet>>> hyper;
    for (int t : ctx.tstar_terminals) {
        for (const auto& u : all_subsets) {
            if (!is_subset(ctx.inst.terminal(t), u)) continue;
            hyper[{t, u}] = minimally_connected_hypergraphs(u);
            for (size_t h = 0; h < hyper[{t, u}].size(); ++h) {
                pvar[{t, u, h}] = m.add_var("p_t" + std::to_string(t) + "_" + vset_name(u) + "_h" +
                                                std::to_string(h),
                                            0, ctx.inst.demand(t));
                for (const auto& r : hyper[{t, u}][h])
                    qvar[{t, u, h, r}] =
                        m.add_var("q_t" + std::to_string(t) + "_" + vset_name(u) + "_h" +
                                      std::to_string(h) + "_" + vset_name(r),
                                  0, s_ub);
            }
        }
    }
    for (int t : ctx.tstar_terminals) {
        std::vector<LinTerm> exact;
        for (const auto& [key, v] : pvar)
            if (std::get<0>(key) == t) exact.push_back({v, 1});
        m.add_constraint(std::move(exact), Rel::Eq, ctx.inst.demand(t));
    }
    for (const auto& [key, qv] : qvar) {
        auto [t, u, h, r] = key;
        m.add_constraint({{qv, 1}, {pvar[{t, u, h}], -1}}, Rel::Ge, 0);  // q >= p
    }
    for (const auto& r : all_subsets) {
        std::vector<LinTerm> terms;
        for (const auto& [key, qv] : qvar)
            if (std::get<3>(key) == r) terms.push_back({qv, 1});
        terms.push_back({svar[r], -1});
        m.add_constraint(std::move(terms), Rel::Le, 0);  // sum q <= s_R
    }

    // assign sub-model: connectivity of the locally stored tree pieces
    for (int t : ctx.ts_terminals) {
        VertexSet t_in_s = set_intersect(ctx.inst.terminal(t), ctx.modulator_real);
        for (int i = 0; i < ctx.inst.demand(t); ++i) {
            std::map<VertexSet, int> bvar;
            std::vector<LinTerm> exact;
            for (const auto& u : all_subsets) {
                if (!is_subset(t_in_s, u)) continue;
                bvar[u] = m.add_var("b_t" + std::to_string(t) + "_i" + std::to_string(i) + "_" +
                                        vset_name(u),
                                    0, 1);
                exact.push_back({bvar[u], 1});
            }
            m.add_constraint(std::move(exact), Rel::Eq, 1);

            for (const auto& [u, bv] : bvar) {
                // at least one hyperedge inside the chosen ground set
                std::vector<LinTerm> edge_terms;
                for (const auto& y : all_subsets)
                    if (!y.empty() && is_subset(y, u)) edge_terms.push_back({avar[{t, i, y}], 1});
                edge_terms.push_back({bv, -1});
                m.add_constraint(std::move(edge_terms), Rel::Ge, 0);

                // every proper nonempty cut of the ground set is crossed
                for (const auto& x : subsets_of(u, 1)) {
                    if (x.size() == u.size()) continue;
                    std::vector<LinTerm> cut_terms;
                    for (const auto& y : all_subsets) {
                        if (y.empty() || !is_subset(y, u)) continue;
                        bool meets = !set_intersect(y, x).empty();
                        bool leaves = !is_subset(y, x);
                        if (meets && leaves) cut_terms.push_back({avar[{t, i, y}], 1});
                    }
                    cut_terms.push_back({bv, -1});
                    m.add_constraint(std::move(cut_terms), Rel::Ge, 0);
                }
            }
            // well-formedness: a chosen piece lies inside the ground set
            for (const auto& y : all_subsets) {
                std::vector<LinTerm> terms;
                for (const auto& [u, bv] : bvar)
                    if (is_subset(y, u)) terms.push_back({bv, 1});
                terms.push_back({avar[{t, i, y}], -1});
                m.add_constraint(std::move(terms), Rel::Ge, 0);
            }
        }
    }
    return m;
}

Decision decide_by_fracture(const GstpInstance& inst, const FnIlpConfig& cfg, FnIlpTrace* trace) {
    GstpInstance cur = apply_rr_sensible(inst);
    if (cur.terminal_count() == 0) return Decision::Feasible;
    if (std::holds_alternative<TrivialNegative>(apply_rr_degree(cur)))
        return Decision::Infeasible;

    AugmentedGraph aug = augment(cur, AugmentMode::Vertex);
    std::optional<std::vector<Vertex>> x;
    for (int k = 0; k <= cfg.max_modulator && !x; ++k)
        x = fracture_deletion(aug.graph, {k, k});
    if (!x)
        throw CapExceeded("decide_by_fracture: no fracture modulator of size <= " +
                          std::to_string(cfg.max_modulator));

    NiceModulatorResult nice = make_nice_modulator(cur, *x);
    if (static_cast<int>(nice.modulator.size()) > cfg.max_modulator)
        throw CapExceeded("decide_by_fracture: nice modulator larger than cap " +
                          std::to_string(cfg.max_modulator));
    if (std::holds_alternative<TrivialNegative>(apply_rr_degree(nice.instance)))
        return Decision::Infeasible;

    ModulatorContext ctx = make_context(nice.instance, nice.modulator);
    if (static_cast<int>(ctx.ts_terminals.size()) > cfg.max_ts)
        throw CapExceeded("decide_by_fracture: |T_S| exceeds cap " + std::to_string(cfg.max_ts));

    auto comps = modulator_components(ctx);
    auto classes = equivalence_classes(ctx, comps);
    std::vector<std::vector<Configuration>> sigs;
    for (const auto& cls : classes) sigs.push_back(signature(ctx, comps[cls.members[0]], cfg));

    IlpModel model = build_selector_ilp(ctx, comps, classes, sigs);
    if (trace) {
        trace->modulator = ctx.modulator;
        trace->class_count = static_cast<int>(classes.size());
        trace->model = model;
    }
    return ilp_feasible(model) ? Decision::Feasible : Decision::Infeasible;
}

}  // namespace gstp
