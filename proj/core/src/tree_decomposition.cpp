#include "gstp/tree_decomposition.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gstp/params.hpp"

namespace gstp {

int TreeDecomposition::width() const {
    int w = -1;
    for (const auto& n : nodes) w = std::max(w, static_cast<int>(n.bag.size()) - 1);
    return w;
}

std::vector<int> TreeDecomposition::topo_order() const {
    std::vector<int> order{root};
    for (size_t i = 0; i < order.size(); ++i)
        for (int c : nodes[order[i]].children) order.push_back(c);
    return order;
}

ValidationReport validate_tree_decomposition(const TreeDecomposition& td, const Graph& g) {
    auto bad = [](std::string s) { return ValidationReport{false, std::move(s)}; };
    if (td.nodes.empty()) return bad("no nodes");
    if (td.root < 0 || td.root >= td.node_count()) return bad("root out of range");
    if (td.nodes[td.root].parent != -1) return bad("root has a parent");

    // tree shape
    std::vector<int> seen(td.node_count(), 0);
    auto order = td.topo_order();
    if (static_cast<int>(order.size()) != td.node_count()) return bad("tree not connected");
    for (int n : order) {
        if (seen[n]++) return bad("node reached twice");
        for (int c : td.nodes[n].children)
            if (c < 0 || c >= td.node_count() || td.nodes[c].parent != n)
                return bad("parent/child links inconsistent");
    }

    // vertex and edge coverage
    std::vector<char> covered(g.vertex_count(), 0);
    for (const auto& n : td.nodes)
        for (Vertex v : n.bag) {
            if (v < 0 || v >= g.vertex_count()) return bad("bag vertex out of range");
            covered[v] = 1;
        }
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!covered[v]) return bad("vertex " + std::to_string(v) + " in no bag");
    for (const auto& [e, m] : g.edges()) {
        bool found = false;
        for (const auto& n : td.nodes) {
            if (std::binary_search(n.bag.begin(), n.bag.end(), e.u) &&
                std::binary_search(n.bag.begin(), n.bag.end(), e.v)) {
                found = true;
                break;
            }
        }
        if (!found)
            return bad("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       ") in no bag");
    }

    // connectivity of each vertex's bag set
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        std::vector<int> holding;
        for (int n = 0; n < td.node_count(); ++n)
            if (std::binary_search(td.nodes[n].bag.begin(), td.nodes[n].bag.end(), v))
                holding.push_back(n);
        if (holding.empty()) continue;
        std::set<int> hold(holding.begin(), holding.end());
        std::set<int> reached{holding[0]};
        std::vector<int> stack{holding[0]};
        while (!stack.empty()) {
            int n = stack.back();
            stack.pop_back();
            std::vector<int> adj = td.nodes[n].children;
            if (td.nodes[n].parent >= 0) adj.push_back(td.nodes[n].parent);
            for (int o : adj)
                if (hold.count(o) && reached.insert(o).second) stack.push_back(o);
        }
        if (reached.size() != hold.size())
            return bad("bags of vertex " + std::to_string(v) + " not connected");
    }
    return {};
}

namespace {

// width of the best elimination of the subset `mask`, eliminating into
// the rest of the graph; memoized over vertex subsets
struct EliminationDp {
    const Graph& g;
    int n;
    std::vector<int> memo;  // -2 unknown
    std::vector<int> choice;

    explicit EliminationDp(const Graph& graph)
        : g(graph), n(graph.vertex_count()), memo(size_t{1} << n, -2),
          choice(size_t{1} << n, -1) {}

    // number of vertices outside `mask` reachable from v through mask
    int eliminated_degree(unsigned mask, int v) const {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{v};
        seen[v] = 1;
        std::set<int> out;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(x)) {
                if (seen[w]) continue;
                if (mask >> w & 1) {
                    seen[w] = 1;
                    stack.push_back(w);
                } else {
                    out.insert(w);
                }
            }
        }
        return static_cast<int>(out.size());
    }

    int solve(unsigned mask) {
        if (mask == 0) return -1;  // no vertex eliminated: width contribution none
        int& m = memo[mask];
        if (m != -2) return m;
        int best = n + 1;
        int best_v = -1;
        for (int v = 0; v < n; ++v) {
            if (!(mask >> v & 1)) continue;
            int d = eliminated_degree(mask, v);
            int rest = solve(mask & ~(1u << v));
            int val = std::max(d, rest);
            if (val < best) {
                best = val;
                best_v = v;
            }
        }
        choice[mask] = best_v;
        return m = best;
    }

    std::vector<int> order() {
        // choice[mask] is the vertex eliminated last within the prefix
        // mask, so unwinding yields the reverse elimination order
        std::vector<int> out;
        unsigned mask = (n == 32 ? ~0u : (1u << n) - 1);
        while (mask) {
            int v = choice[mask];
            out.push_back(v);
            mask &= ~(1u << v);
        }
        std::reverse(out.begin(), out.end());
        return out;
    }
};

std::vector<int> min_fill_order(const Graph& g) {
    int n = g.vertex_count();
    std::vector<std::set<int>> adj(n);
    for (const auto& [e, m] : g.edges())
        if (!e.loop()) {
            adj[e.u].insert(e.v);
            adj[e.v].insert(e.u);
        }
    std::vector<char> done(n, 0);
    std::vector<int> order;
    for (int step = 0; step < n; ++step) {
        int best = -1;
        long best_fill = -1;
        for (int v = 0; v < n; ++v) {
            if (done[v]) continue;
            long fill = 0;
            std::vector<int> nb(adj[v].begin(), adj[v].end());
            for (size_t i = 0; i < nb.size(); ++i)
                for (size_t j = i + 1; j < nb.size(); ++j)
                    if (!adj[nb[i]].count(nb[j])) ++fill;
            if (best < 0 || fill < best_fill) {
                best = v;
                best_fill = fill;
            }
        }
        order.push_back(best);
        done[best] = 1;
        std::vector<int> nb(adj[best].begin(), adj[best].end());
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j) {
                adj[nb[i]].insert(nb[j]);
                adj[nb[j]].insert(nb[i]);
            }
        for (int w : nb) adj[w].erase(best);
        adj[best].clear();
    }
    return order;
}

TreeDecomposition from_elimination_order(const Graph& g, const std::vector<int>& order) {
    int n = g.vertex_count();
    TreeDecomposition td;
    if (n == 0) {
        td.nodes.push_back({});
        return td;
    }
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;

    // fill-in: eliminate in order, bag of v = {v} + later neighbors at
    // elimination time
    std::vector<std::set<int>> adj(n);
    for (const auto& [e, m] : g.edges())
        if (!e.loop()) {
            adj[e.u].insert(e.v);
            adj[e.v].insert(e.u);
        }
    std::vector<std::vector<Vertex>> bags(n);
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        std::vector<int> later;
        for (int w : adj[v])
            if (pos[w] > i) later.push_back(w);
        bags[v] = later;
        bags[v].push_back(v);
        std::sort(bags[v].begin(), bags[v].end());
        for (size_t a = 0; a < later.size(); ++a)
            for (size_t b = a + 1; b < later.size(); ++b) {
                adj[later[a]].insert(later[b]);
                adj[later[b]].insert(later[a]);
            }
    }

    // the parent of v's node is the node of its earliest-later bag member
    td.nodes.resize(n);
    int root = order[n - 1];
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        td.nodes[v].bag = bags[v];
        int parent = -1, best = n + 1;
        for (Vertex w : bags[v]) {
            if (w == v) continue;
            if (pos[w] < best) {
                best = pos[w];
                parent = w;
            }
        }
        if (parent >= 0) {
            td.nodes[v].parent = parent;
            td.nodes[parent].children.push_back(v);
        }
    }
    // vertices eliminated with empty later-sets other than the last form
    // separate roots (disconnected graphs); chain them under the root
    td.root = root;
    for (int v = 0; v < n; ++v) {
        if (v == root || td.nodes[v].parent != -1) continue;
        td.nodes[v].parent = root;
        td.nodes[root].children.push_back(v);
    }
    return td;
}

}  // namespace

int treewidth(const Graph& g, int exact_cap) {
    if (g.vertex_count() > exact_cap)
        throw CapExceeded("treewidth: graph exceeds exact cap " + std::to_string(exact_cap));
    if (g.vertex_count() == 0) return -1;
    Graph s = g.simplified();
    EliminationDp dp(s);
    return std::max(0, dp.solve((s.vertex_count() == 32 ? ~0u : (1u << s.vertex_count()) - 1)));
}

TreeDecomposition tree_decomposition(const Graph& g, int exact_cap) {
    Graph s = g.simplified();
    std::vector<int> order;
    if (s.vertex_count() <= exact_cap && s.vertex_count() > 0) {
        EliminationDp dp(s);
        dp.solve((s.vertex_count() == 32 ? ~0u : (1u << s.vertex_count()) - 1));
        order = dp.order();
    } else if (s.vertex_count() > 0) {
        order = min_fill_order(s);
    }
    TreeDecomposition td = from_elimination_order(s, order);
    auto rep = validate_tree_decomposition(td, g);
    if (!rep) throw std::logic_error("tree_decomposition: invalid result: " + rep.violation);
    return td;
}

namespace {

int add_node(TreeDecomposition& td, int parent, std::vector<Vertex> bag, TdNodeKind kind,
             Vertex pivot = -1) {
    TdNode n;
    n.parent = parent;
    n.bag = std::move(bag);
    n.kind = kind;
    n.pivot = pivot;
    td.nodes.push_back(std::move(n));
    int id = td.node_count() - 1;
    if (parent >= 0) td.nodes[parent].children.push_back(id);
    return id;
}

// chain of introduces/forgets transforming bag `from` into bag `to`,
// returns the last node id; nodes hang downward from `parent`
int bag_chain(TreeDecomposition& td, int parent, std::vector<Vertex> from,
              const std::vector<Vertex>& to) {
    std::vector<Vertex> extra, missing;
    std::set_difference(from.begin(), from.end(), to.begin(), to.end(),
                        std::back_inserter(extra));
    std::set_difference(to.begin(), to.end(), from.begin(), from.end(),
                        std::back_inserter(missing));
    int cur = parent;
    std::vector<Vertex> bag = from;
    // walking top-down: the parent bag is reached from the child by
    // introduces (parent has more) and forgets (parent has less), so
    // emit nodes whose kind describes the transition at that node
    for (Vertex v : extra) {
        // parent had v, child will not: parent is an introduce of v
        td.nodes[cur].kind = TdNodeKind::Introduce;
        td.nodes[cur].pivot = v;
        bag.erase(std::find(bag.begin(), bag.end(), v));
        cur = add_node(td, cur, bag, TdNodeKind::Plain);
    }
    for (Vertex v : missing) {
        td.nodes[cur].kind = TdNodeKind::Forget;
        td.nodes[cur].pivot = v;
        bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
        cur = add_node(td, cur, bag, TdNodeKind::Plain);
    }
    return cur;
}

void build_nice(const TreeDecomposition& src, int snode, TreeDecomposition& dst, int dnode) {
    // dnode currently carries the bag of snode and kind Plain
    const auto& children = src.nodes[snode].children;
    const auto& bag = src.nodes[snode].bag;
    if (children.empty()) {
        // introduce everything below, end at an empty leaf
        int cur = bag_chain(dst, dnode, bag, {});
        dst.nodes[cur].kind = TdNodeKind::Leaf;
        return;
    }
    if (children.size() == 1) {
        int cur = bag_chain(dst, dnode, bag, src.nodes[children[0]].bag);
        build_nice(src, children[0], dst, cur);
        return;
    }
    // join: left branch takes the first child, right branch the rest
    dst.nodes[dnode].kind = TdNodeKind::Join;
    int left = add_node(dst, dnode, bag, TdNodeKind::Plain);
    int right = add_node(dst, dnode, bag, TdNodeKind::Plain);
    int lcur = bag_chain(dst, left, bag, src.nodes[children[0]].bag);
    build_nice(src, children[0], dst, lcur);

    if (children.size() == 2) {
        int rcur = bag_chain(dst, right, bag, src.nodes[children[1]].bag);
        build_nice(src, children[1], dst, rcur);
    } else {
        // peel children off one at a time
        TreeDecomposition rest_src = src;
        rest_src.nodes[snode].children.assign(children.begin() + 1, children.end());
        build_nice(rest_src, snode, dst, right);
    }
}

}  // namespace

TreeDecomposition make_nice(const TreeDecomposition& td, const Graph& g) {
    auto rep = validate_tree_decomposition(td, g);
    if (!rep) throw std::invalid_argument("make_nice: invalid decomposition: " + rep.violation);

    TreeDecomposition out;
    out.root = 0;
    add_node(out, -1, {}, TdNodeKind::Plain);
    int cur = bag_chain(out, 0, {}, td.nodes[td.root].bag);
    build_nice(td, td.root, out, cur);

    auto rep2 = validate_tree_decomposition(out, g);
    if (!rep2) throw std::logic_error("make_nice: produced invalid decomposition: " + rep2.violation);
    if (out.width() > std::max(0, td.width()))
        throw std::logic_error("make_nice: width increased");
    return out;
}

TreeDecomposition decomposition_from_raw(const RawDecomposition& raw, const Graph& g) {
    TreeDecomposition td;
    td.root = raw.root;
    td.nodes.resize(raw.bags.size());
    for (size_t i = 0; i < raw.bags.size(); ++i) td.nodes[i].bag = raw.bags[i];
    for (auto [p, c] : raw.links) {
        if (td.nodes[c].parent != -1) throw std::invalid_argument("decomposition: node has two parents");
        td.nodes[c].parent = p;
        td.nodes[p].children.push_back(c);
    }
    auto rep = validate_tree_decomposition(td, g);
    if (!rep) throw std::invalid_argument("decomposition: " + rep.violation);
    return td;
}

RawDecomposition decomposition_to_raw(const TreeDecomposition& td) {
    RawDecomposition raw;
    raw.tree_cut = false;
    raw.root = td.root;
    raw.bags.resize(td.nodes.size());
    for (int n = 0; n < td.node_count(); ++n) {
        raw.bags[n] = td.nodes[n].bag;
        for (int c : td.nodes[n].children) raw.links.push_back({n, c});
    }
    return raw;
}

}  // namespace gstp
