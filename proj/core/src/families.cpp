#include "gstp/families.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace gstp {

Graph windmill(int n) {
    if (n < 1) throw std::invalid_argument("windmill: n < 1");
    Graph g(2 * n + 1);
    for (int i = 0; i < n; ++i) {
        Vertex a = 1 + 2 * i, b = 2 + 2 * i;
        g.add_edge(0, a);
        g.add_edge(0, b);
        g.add_edge(a, b);
    }
    return g;
}

Graph star(int n) {
    if (n < 0) throw std::invalid_argument("star: n < 0");
    Graph g(n + 1);
    for (int i = 1; i <= n; ++i) g.add_edge(0, i);
    return g;
}

Graph star_spokes(int n, int k) {
    if (n < 1 || k < 1) throw std::invalid_argument("star_spokes: bad params");
    Graph g(n + 1, true);
    for (int i = 1; i <= n; ++i) g.add_edge(0, i, k);
    return g;
}

Graph wall(int n) {
    if (n < 1) throw std::invalid_argument("wall: n < 1");
    int rows = n, cols = 2 * n;
    auto id = [cols](int r, int c) { return r * cols + c; };
    Graph g(rows * cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c + 1 < cols; ++c) g.add_edge(id(r, c), id(r, c + 1));
    for (int r = 0; r + 1 < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (c % 2 == r % 2) g.add_edge(id(r, c), id(r + 1, c));
    return g;
}

Graph disjoint_triangles(int n) {
    if (n < 0) throw std::invalid_argument("disjoint_triangles: n < 0");
    Graph g(3 * n);
    for (int i = 0; i < n; ++i) {
        g.add_edge(3 * i, 3 * i + 1);
        g.add_edge(3 * i + 1, 3 * i + 2);
        g.add_edge(3 * i, 3 * i + 2);
    }
    return g;
}

Graph grid(int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("grid: bad params");
    auto id = [cols](int r, int c) { return r * cols + c; };
    Graph g(rows * cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1));
            if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c));
        }
    return g;
}

GstpInstance star_pair_instance(int i) {
    Graph g = star(i);
    std::vector<VertexSet> ts;
    std::vector<int> ds;
    for (int leaf = 1; leaf <= i; ++leaf) {
        ts.push_back(make_vertex_set({0, leaf}));
        ds.push_back(1);
    }
    return GstpInstance(std::move(g), std::move(ts), std::move(ds));
}

GstpInstance star_leaves_instance(int i, int demand) {
    Graph g = star(i);
    VertexSet leaves;
    for (int leaf = 1; leaf <= i; ++leaf) leaves.push_back(leaf);
    return GstpInstance(std::move(g), {leaves}, {demand});
}

GstpInstance triple_instance(int i) {
    Graph g(3 * i);
    std::vector<VertexSet> ts;
    std::vector<int> ds;
    for (int j = 0; j < i; ++j) {
        ts.push_back(make_vertex_set({3 * j, 3 * j + 1, 3 * j + 2}));
        ds.push_back(1);
    }
    return GstpInstance(std::move(g), std::move(ts), std::move(ds));
}

GstpInstance three_path_instance(int i) {
    if (i < 1) throw std::invalid_argument("three_path_instance: i < 1");
    long paths = 4L * i * i * i * i;
    Graph g(static_cast<int>(1 + 3 * paths));
    std::vector<VertexSet> ts;
    std::vector<int> ds;
    for (long j = 0; j < paths; ++j) {
        Vertex a = static_cast<Vertex>(1 + 3 * j);
        g.add_edge(a, a + 1);
        g.add_edge(a + 1, a + 2);
        ts.push_back(make_vertex_set({0, a, a + 1, a + 2}));
        ds.push_back(1);
    }
    return GstpInstance(std::move(g), std::move(ts), std::move(ds));
}

Graph random_graph(int max_vertices, int max_edges, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int n = std::uniform_int_distribution<int>(1, max_vertices)(rng);
    long all = static_cast<long>(n) * (n - 1) / 2;
    int m = static_cast<int>(
        std::uniform_int_distribution<long>(0, std::min<long>(max_edges, all))(rng));
    std::set<std::pair<int, int>> chosen;
    Graph g(n);
    while (static_cast<int>(chosen.size()) < m) {
        int u = std::uniform_int_distribution<int>(0, n - 1)(rng);
        int v = std::uniform_int_distribution<int>(0, n - 1)(rng);
        if (u == v) continue;
        if (chosen.insert({std::min(u, v), std::max(u, v)}).second) g.add_edge(u, v);
    }
    return g;
}

GstpInstance random_instance(const RandomInstanceParams& p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int n = std::uniform_int_distribution<int>(p.min_vertices, p.max_vertices)(rng);
    long all = static_cast<long>(n) * (n - 1) / 2;
    int m = static_cast<int>(
        std::uniform_int_distribution<long>(0, std::min<long>(p.max_edges, all))(rng));
    std::set<std::pair<int, int>> chosen;
    Graph g(n);
    while (static_cast<int>(chosen.size()) < m) {
        int u = std::uniform_int_distribution<int>(0, n - 1)(rng);
        int v = std::uniform_int_distribution<int>(0, n - 1)(rng);
        if (u == v) continue;
        if (chosen.insert({std::min(u, v), std::max(u, v)}).second) g.add_edge(u, v);
    }
    int t = std::uniform_int_distribution<int>(0, p.max_terminal_sets)(rng);
    std::vector<VertexSet> ts;
    std::vector<int> ds;
    int budget = p.max_total_demand;
    for (int i = 0; i < t && budget > 0; ++i) {
        int size = std::uniform_int_distribution<int>(2, std::min(p.max_terminal_size, n))(rng);
        std::vector<Vertex> pool(n);
        for (int v = 0; v < n; ++v) pool[v] = v;
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(size);
        int d = std::uniform_int_distribution<int>(1, std::min(p.max_demand, budget))(rng);
        budget -= d;
        ts.push_back(make_vertex_set(pool));
        ds.push_back(d);
    }
    return GstpInstance(std::move(g), std::move(ts), std::move(ds));
}

Graph random_partial_ktree(int n, int k, double keep_prob, std::uint64_t seed) {
    if (n < k + 1) throw std::invalid_argument("random_partial_ktree: n < k+1");
    std::mt19937_64 rng(seed);
    // grow a k-tree, then keep each edge with keep_prob
    std::vector<std::set<int>> cliques;
    std::set<std::pair<int, int>> kept;
    std::vector<std::pair<int, int>> all_edges;
    std::set<int> base;
    for (int v = 0; v <= k; ++v) base.insert(v);
    for (int u : base)
        for (int v : base)
            if (u < v) all_edges.push_back({u, v});
    cliques.push_back(base);
    for (int v = k + 1; v < n; ++v) {
        const auto& host = cliques[std::uniform_int_distribution<size_t>(0, cliques.size() - 1)(rng)];
        std::vector<int> hv(host.begin(), host.end());
        std::shuffle(hv.begin(), hv.end(), rng);
        std::set<int> sub(hv.begin(), hv.begin() + k);
        for (int u : sub) all_edges.push_back({std::min(u, v), std::max(u, v)});
        sub.insert(v);
        cliques.push_back(sub);
    }
    Graph g(n);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (auto [u, v] : all_edges)
        if (coin(rng) < keep_prob && !g.has_edge(u, v)) g.add_edge(u, v);
    return g;
}

FamilyValue family(const std::string& name, const std::vector<int>& params,
                   std::optional<std::uint64_t> seed) {
    auto need = [&](size_t k) {
        if (params.size() != k)
            throw std::invalid_argument("family " + name + ": expected " + std::to_string(k) +
                                        " parameter(s)");
    };
    if (name == "windmill") { need(1); return windmill(params[0]); }
    if (name == "star") { need(1); return star(params[0]); }
    if (name == "star_spokes") { need(2); return star_spokes(params[0], params[1]); }
    if (name == "wall") { need(1); return wall(params[0]); }
    if (name == "triangles") { need(1); return disjoint_triangles(params[0]); }
    if (name == "path") { need(1); return path_graph(params[0]); }
    if (name == "cycle") { need(1); return cycle_graph(params[0]); }
    if (name == "complete") { need(1); return complete_graph(params[0]); }
    if (name == "grid") { need(2); return grid(params[0], params[1]); }
    if (name == "star_pairs") { need(1); return star_pair_instance(params[0]); }
    if (name == "star_leaves") { need(2); return star_leaves_instance(params[0], params[1]); }
    if (name == "triples") { need(1); return triple_instance(params[0]); }
    if (name == "three_paths") { need(1); return three_path_instance(params[0]); }
    if (name == "random") {
        need(0);
        return random_instance(RandomInstanceParams{}, seed.value_or(0));
    }
    throw std::invalid_argument("family: unknown name '" + name + "'");
}

}  // namespace gstp
