#include "gstp/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace gstp {

Vertex VertexMap::at(Vertex old) const {
    if (old < 0 || old >= static_cast<int>(map.size()) || map[old] < 0)
        throw std::out_of_range("VertexMap: vertex " + std::to_string(old) + " was removed");
    return map[old];
}

std::vector<Vertex> VertexMap::image(const std::vector<Vertex>& vs) const {
    std::vector<Vertex> out;
    out.reserve(vs.size());
    for (Vertex v : vs) out.push_back(at(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Graph::Graph(int vertex_count, bool multigraph) : n_(vertex_count), multigraph_(multigraph) {
    if (vertex_count < 0) throw std::invalid_argument("Graph: negative vertex count");
}

void Graph::check_vertex(Vertex v) const {
    if (v < 0 || v >= n_)
        throw std::out_of_range("Graph: vertex " + std::to_string(v) + " out of range");
}

bool Graph::is_simple() const {
    if (multigraph_) {
        for (const auto& [e, m] : edges_)
            if (e.loop() || m != 1) return false;
    }
    return true;
}

void Graph::add_edge(Vertex u, Vertex v, int mult) {
    check_vertex(u);
    check_vertex(v);
    if (mult <= 0) throw std::invalid_argument("Graph: nonpositive multiplicity");
    Edge e(u, v);
    if (!multigraph_) {
        if (e.loop()) throw std::invalid_argument("Graph: loop in simple graph");
        if (mult != 1 || edges_.count(e))
            throw std::invalid_argument("Graph: parallel edge in simple graph");
    }
    edges_[e] += mult;
}

void Graph::remove_edge(Vertex u, Vertex v, int mult) {
    Edge e(u, v);
    auto it = edges_.find(e);
    if (it == edges_.end() || it->second < mult)
        throw std::invalid_argument("Graph: removing missing edge");
    it->second -= mult;
    if (it->second == 0) edges_.erase(it);
}

int Graph::multiplicity(Vertex u, Vertex v) const {
    auto it = edges_.find(Edge(u, v));
    return it == edges_.end() ? 0 : it->second;
}

int Graph::edge_count() const {
    int total = 0;
    for (const auto& [e, m] : edges_) total += m;
    return total;
}

int Graph::degree(Vertex v) const {
    check_vertex(v);
    int d = 0;
    for (const auto& [e, m] : edges_) {
        if (e.loop() && e.u == v) d += 2 * m;
        else if (e.u == v || e.v == v) d += m;
    }
    return d;
}

int Graph::max_degree() const {
    int best = 0;
    for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
    return best;
}

std::vector<Vertex> Graph::neighbors(Vertex v) const {
    check_vertex(v);
    std::vector<Vertex> out;
    for (const auto& [e, m] : edges_) {
        if (e.loop()) continue;
        if (e.u == v) out.push_back(e.v);
        else if (e.v == v) out.push_back(e.u);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<EdgeWithMult> Graph::edges() const {
    std::vector<EdgeWithMult> out;
    out.reserve(edges_.size());
    for (const auto& [e, m] : edges_) out.push_back({e, m});
    return out;
}

std::vector<std::vector<Vertex>> Graph::components() const {
    std::vector<int> comp(n_, -1);
    int count = 0;
    for (Vertex start = 0; start < n_; ++start) {
        if (comp[start] >= 0) continue;
        std::vector<Vertex> stack{start};
        comp[start] = count;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : neighbors(v)) {
                if (comp[w] < 0) {
                    comp[w] = count;
                    stack.push_back(w);
                }
            }
        }
        ++count;
    }
    std::vector<std::vector<Vertex>> out(count);
    for (Vertex v = 0; v < n_; ++v) out[comp[v]].push_back(v);
    return out;  // sorted by smallest member since vertices scanned in order
}

bool Graph::connected() const {
    return components().size() <= 1;
}

std::vector<EdgeWithMult> Graph::cut_edges(const std::vector<Vertex>& s) const {
    std::vector<char> in(n_, 0);
    for (Vertex v : s) {
        check_vertex(v);
        in[v] = 1;
    }
    std::vector<EdgeWithMult> out;
    for (const auto& [e, m] : edges_)
        if (!e.loop() && in[e.u] != in[e.v]) out.push_back({e, m});
    return out;
}

ContractResult Graph::contract(const std::vector<Vertex>& s, bool keep_multiplicity) const {
    if (s.empty()) throw std::invalid_argument("contract: empty set");
    std::vector<char> in(n_, 0);
    for (Vertex v : s) {
        check_vertex(v);
        in[v] = 1;
    }
    Vertex rep_old = *std::min_element(s.begin(), s.end());

    VertexMap vmap;
    vmap.map.assign(n_, -1);
    int next = 0;
    for (Vertex v = 0; v < n_; ++v) {
        if (in[v] && v != rep_old) continue;
        vmap.map[v] = next++;
    }
    for (Vertex v = 0; v < n_; ++v)
        if (in[v]) vmap.map[v] = vmap.map[rep_old];

    Graph g(next, keep_multiplicity ? true : multigraph_);
    for (const auto& [e, m] : edges_) {
        Vertex a = vmap.map[e.u], b = vmap.map[e.v];
        if (a == b && in[e.u] && in[e.v]) continue;  // internal edge becomes loop: removed
        if (keep_multiplicity) {
            if (a == b) {
                if (!e.loop()) continue;  // loop created by merging: removed
                g.add_edge(a, b, m);      // preexisting loop survives
            } else {
                g.add_edge(a, b, m);
            }
        } else {
            if (a == b) continue;
            if (!g.has_edge(a, b)) g.add_edge(a, b, 1);
        }
    }
    return {std::move(g), vmap.map[rep_old], std::move(vmap)};
}

SuppressResult Graph::suppress(Vertex v) const {
    check_vertex(v);
    int d = degree(v);
    if (d > 2) throw std::invalid_argument("suppress: degree " + std::to_string(d) + " > 2");

    // Collect the (up to two) edge endpoints at v, with multiplicity.
    std::vector<Vertex> ends;
    for (const auto& [e, m] : edges_) {
        if (e.loop() && e.u == v) continue;  // both ends are v; nothing to rejoin
        if (e.u == v)
            for (int i = 0; i < m; ++i) ends.push_back(e.v);
        else if (e.v == v)
            for (int i = 0; i < m; ++i) ends.push_back(e.u);
    }

    VertexMap vmap;
    vmap.map.assign(n_, -1);
    int next = 0;
    for (Vertex w = 0; w < n_; ++w)
        if (w != v) vmap.map[w] = next++;

    Graph g(n_ - 1, multigraph_);
    for (const auto& [e, m] : edges_) {
        if (e.u == v || e.v == v) continue;
        g.add_edge(vmap.map[e.u], vmap.map[e.v], m);
    }
    if (ends.size() == 2 && ends[0] != ends[1])
        g.add_edge(vmap.map[ends[0]], vmap.map[ends[1]], 1);
    // ends equal: would be a loop, removed; degree <= 1: nothing to add
    return {std::move(g), std::move(vmap)};
}

SubdivideResult Graph::subdivide(Edge e) const {
    if (multiplicity(e.u, e.v) == 0) throw std::invalid_argument("subdivide: missing edge");
    if (e.loop()) throw std::invalid_argument("subdivide: loop");
    Graph g = *this;
    g.remove_edge(e.u, e.v, 1);
    Vertex w = g.add_vertices(1);
    g.add_edge(e.u, w, 1);
    g.add_edge(e.v, w, 1);
    return {std::move(g), w};
}

InducedResult Graph::induced(const std::vector<Vertex>& keep) const {
    std::vector<char> in(n_, 0);
    for (Vertex v : keep) {
        check_vertex(v);
        in[v] = 1;
    }
    VertexMap vmap;
    vmap.map.assign(n_, -1);
    int next = 0;
    for (Vertex v = 0; v < n_; ++v)
        if (in[v]) vmap.map[v] = next++;
    Graph g(next, multigraph_);
    for (const auto& [e, m] : edges_)
        if (in[e.u] && in[e.v]) g.add_edge(vmap.map[e.u], vmap.map[e.v], m);
    return {std::move(g), std::move(vmap)};
}

InducedResult Graph::remove_vertices(const std::vector<Vertex>& drop) const {
    std::vector<char> out(n_, 0);
    for (Vertex v : drop) {
        check_vertex(v);
        out[v] = 1;
    }
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < n_; ++v)
        if (!out[v]) keep.push_back(v);
    return induced(keep);
}

Graph Graph::simplified() const {
    Graph g(n_, false);
    for (const auto& [e, m] : edges_)
        if (!e.loop()) g.add_edge(e.u, e.v, 1);
    return g;
}

Vertex Graph::add_vertices(int k) {
    if (k < 0) throw std::invalid_argument("add_vertices: negative count");
    Vertex first = n_;
    n_ += k;
    return first;
}

bool Graph::operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
}

Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle_graph: n < 3");
    Graph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

}  // namespace gstp
