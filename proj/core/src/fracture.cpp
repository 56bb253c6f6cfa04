#include "gstp/fracture.hpp"

#include <algorithm>
#include <set>

namespace gstp {

bool is_fracture_deletion_set(const Graph& g, const std::vector<Vertex>& s, int k) {
    auto res = g.remove_vertices(s);
    for (const auto& comp : res.graph.components())
        if (static_cast<int>(comp.size()) > k) return false;
    return true;
}

namespace {

// first k+1 vertices of a BFS from the lowest-index vertex of a
// connected graph with more than k vertices
std::vector<Vertex> bfs_connected_set(const Graph& g, int k) {
    std::vector<Vertex> order;
    std::vector<char> seen(g.vertex_count(), 0);
    Vertex start = 0;
    seen[start] = 1;
    std::vector<Vertex> queue{start};
    size_t head = 0;
    while (head < queue.size() && static_cast<int>(order.size()) < k + 1) {
        Vertex v = queue[head++];
        order.push_back(v);
        for (Vertex w : g.neighbors(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
        }
    }
    std::sort(order.begin(), order.end());
    return order;
}

std::optional<std::vector<Vertex>> solve(const Graph& g, int k, int d);

// smallest d' in [1, limit] such that the connected oversized component
// has a k-fracture deletion set of that size, together with a witness
std::optional<std::pair<int, std::vector<Vertex>>> smallest_deletion(const Graph& comp, int k,
                                                                     int limit) {
    for (int dc = 1; dc <= limit; ++dc) {
        if (dc > comp.vertex_count()) break;
        if (auto s = solve(comp, k, dc)) return std::make_pair(dc, *s);
    }
    return std::nullopt;
}

std::vector<Vertex> pad_with_lowest(const Graph& g, std::vector<Vertex> s, int d) {
    std::set<Vertex> have(s.begin(), s.end());
    for (Vertex v = 0; v < g.vertex_count() && static_cast<int>(have.size()) < d; ++v)
        have.insert(v);
    return std::vector<Vertex>(have.begin(), have.end());
}

std::optional<std::vector<Vertex>> solve(const Graph& g, int k, int d) {
    if (g.vertex_count() < d) return std::nullopt;

    auto comps = g.components();
    if (comps.size() <= 1) {
        if (g.vertex_count() <= k) return pad_with_lowest(g, {}, d);
        if (d == 0) return std::nullopt;
        // branch on a connected set of k+1 vertices; one of them must go
        for (Vertex u : bfs_connected_set(g, k)) {
            auto rem = g.remove_vertices({u});
            if (auto sub = solve(rem.graph, k, d - 1)) {
                std::vector<Vertex> s{u};
                for (Vertex v : *sub) {
                    // undo the renumbering of remove_vertices({u})
                    s.push_back(v < u ? v : v + 1);
                }
                std::sort(s.begin(), s.end());
                return s;
            }
        }
        return std::nullopt;
    }

    std::vector<std::vector<Vertex>> oversized;
    for (auto& c : comps)
        if (static_cast<int>(c.size()) > k) oversized.push_back(c);

    if (oversized.empty()) return pad_with_lowest(g, {}, d);
    if (static_cast<int>(oversized.size()) > d) return std::nullopt;

    if (oversized.size() == 1) {
        auto ind = g.induced(oversized[0]);
        // within the component only up to |V(C)| deletions are spendable
        int dc = std::min(d, ind.graph.vertex_count());
        auto sub = solve(ind.graph, k, dc);
        if (!sub) return std::nullopt;
        std::vector<Vertex> s;
        for (Vertex v : *sub) s.push_back(oversized[0][v]);
        return pad_with_lowest(g, std::move(s), d);
    }

    // several oversized components: accumulate per-component minima with
    // the running-sum early abort
    std::vector<Vertex> s;
    int spent = 0;
    int pending = static_cast<int>(oversized.size());
    for (const auto& comp : oversized) {
        --pending;
        int limit = d - spent - pending;  // each remaining component needs >= 1
        if (limit < 1) return std::nullopt;
        auto ind = g.induced(comp);
        auto best = smallest_deletion(ind.graph, k, std::min(limit, d - 1));
        if (!best) return std::nullopt;
        spent += best->first;
        for (Vertex v : best->second) s.push_back(comp[v]);
    }
    if (spent > d) return std::nullopt;
    return pad_with_lowest(g, std::move(s), d);
}

}  // namespace

std::optional<std::vector<Vertex>> fracture_deletion(const Graph& g, FractureQuery q) {
    if (q.k < 0 || q.d < 0) throw std::invalid_argument("fracture_deletion: negative parameter");
    auto s = solve(g, q.k, q.d);
    if (s) {
        if (static_cast<int>(s->size()) != q.d || !is_fracture_deletion_set(g, *s, q.k))
            throw std::logic_error("fracture_deletion: internal witness check failed");
    }
    return s;
}

std::pair<std::vector<Vertex>, int> fracture_modulator(const Graph& g) {
    if (g.vertex_count() == 0) throw std::invalid_argument("fracture_modulator: empty graph");
    for (int k = 0;; ++k) {
        if (auto s = fracture_deletion(g, {k, k})) return {*s, k};
    }
}

bool is_nice_modulator(const GstpInstance& inst, const std::vector<Vertex>& s, std::string* why) {
    AugmentedGraph aug = augment(inst, AugmentMode::Vertex);
    int host_n = inst.graph().vertex_count();
    auto report = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (!is_fracture_deletion_set(aug.graph, s, static_cast<int>(s.size())))
        return report("not a fracture modulator");
    std::vector<Vertex> host_part;
    for (Vertex v : s)
        if (v < host_n) host_part.push_back(v);
    for (size_t i = 0; i < host_part.size(); ++i)
        for (size_t j = i + 1; j < host_part.size(); ++j)
            if (inst.graph().has_edge(host_part[i], host_part[j]))
                return report("modulator not edgeless inside host graph");

    auto rem = aug.graph.remove_vertices(s);
    auto comps = rem.graph.components();
    std::vector<int> comp_of(aug.graph.vertex_count(), -1);
    for (size_t c = 0; c < comps.size(); ++c)
        for (Vertex v : comps[c])
            comp_of[v] = static_cast<int>(c);
    std::set<Vertex> in_s(s.begin(), s.end());
    for (int t = 0; t < inst.terminal_count(); ++t) {
        if (!in_s.count(aug.aug_vertex_of[t])) continue;
        std::set<int> touched;
        for (Vertex v : inst.terminal(t))
            if (!in_s.count(v)) touched.insert(comp_of[rem.vmap.at(v)]);
        if (touched.size() < 2)
            return report("terminal set " + std::to_string(t) +
                          " in modulator meets fewer than two components");
    }
    return true;
}

NiceModulatorResult make_nice_modulator(const GstpInstance& inst, const std::vector<Vertex>& x) {
    AugmentedGraph aug0 = augment(inst, AugmentMode::Vertex);
    if (!is_fracture_deletion_set(aug0.graph, x, static_cast<int>(x.size())))
        throw std::invalid_argument("make_nice_modulator: X is not a fracture modulator");

    int host_n = inst.graph().vertex_count();
    std::set<Vertex> xs(x.begin(), x.end());

    // subdivide every host edge inside X
    Graph host = inst.graph();
    std::vector<Edge> inside;
    for (const auto& [e, m] : host.edges())
        if (xs.count(e.u) && xs.count(e.v)) inside.push_back(e);
    for (const Edge& e : inside) host = host.subdivide(e).graph;

    std::vector<int> vmap(host_n);
    for (int v = 0; v < host_n; ++v) vmap[v] = v;  // subdivision appends, never renumbers

    GstpInstance cur(host, inst.terminals(), inst.demands());
    AugmentedGraph aug = augment(cur, AugmentMode::Vertex);

    // X expressed over the new augmented indexing (host part unchanged,
    // augmented vertices shifted by the subdivision vertices)
    std::vector<Vertex> x_new;
    for (Vertex v : x)
        x_new.push_back(v < host_n ? v : v - host_n + host.vertex_count());

    // drop augmented modulator vertices whose terminal set touches at
    // most one component of aug - X
    auto rem = aug.graph.remove_vertices(x_new);
    auto comps = rem.graph.components();
    std::vector<int> comp_of(aug.graph.vertex_count(), -1);
    for (size_t c = 0; c < comps.size(); ++c)
        for (Vertex v : comps[c]) comp_of[v] = static_cast<int>(c);
    std::set<Vertex> xset(x_new.begin(), x_new.end());

    std::vector<Vertex> z_host;   // host-graph vertices, stable under padding
    std::vector<int> z_aug;       // terminal indices of kept augmented vertices
    for (Vertex v : x_new) {
        if (v < host.vertex_count()) {
            z_host.push_back(v);
            continue;
        }
        int t = v - host.vertex_count();
        std::set<int> touched;
        for (Vertex w : inst.terminal(t))
            if (!xset.count(w)) touched.insert(comp_of[rem.vmap.at(w)]);
        if (touched.size() >= 2) z_aug.push_back(t);
    }

    // pad with isolated host vertices until Z is a modulator again
    for (;;) {
        AugmentedGraph a = augment(cur, AugmentMode::Vertex);
        std::vector<Vertex> s = z_host;
        for (int t : z_aug) s.push_back(cur.graph().vertex_count() + t);
        std::sort(s.begin(), s.end());
        if (is_fracture_deletion_set(a.graph, s, static_cast<int>(s.size()))) {
            std::string why;
            if (!is_nice_modulator(cur, s, &why))
                throw std::logic_error("make_nice_modulator: result not nice: " + why);
            return {cur, s, vmap};
        }
        Graph padded = cur.graph();
        Vertex fresh = padded.add_vertices(1);
        cur = GstpInstance(padded, cur.terminals(), cur.demands());
        z_host.push_back(fresh);
    }
}

}  // namespace gstp
