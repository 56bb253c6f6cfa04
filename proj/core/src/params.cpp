#include "gstp/params.hpp"

#include <algorithm>
#include <set>

namespace gstp {

namespace {

int vc_branch(const Graph& g, std::vector<char>& removed, int budget) {
    // find any remaining edge
    for (const auto& [e, m] : g.edges()) {
        if (e.loop() || removed[e.u] || removed[e.v]) continue;
        if (budget == 0) return -1;
        removed[e.u] = 1;
        int a = vc_branch(g, removed, budget - 1);
        removed[e.u] = 0;
        if (a >= 0) return a + 1;
        removed[e.v] = 1;
        int b = vc_branch(g, removed, budget - 1);
        removed[e.v] = 0;
        if (b >= 0) return b + 1;
        return -1;
    }
    return 0;
}

bool acyclic_without(const Graph& g, const std::vector<char>& removed) {
    // acyclic iff |E| = |V| - #components on the surviving vertices
    int n = 0, m = 0, comps = 0;
    std::vector<int> seen(g.vertex_count(), 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!removed[v]) ++n;
    for (const auto& [e, mult] : g.edges())
        if (!e.loop() && !removed[e.u] && !removed[e.v]) ++m;
    for (Vertex start = 0; start < g.vertex_count(); ++start) {
        if (removed[start] || seen[start]) continue;
        ++comps;
        seen[start] = 1;
        std::vector<Vertex> stack{start};
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v)) {
                if (removed[w] || seen[w]) continue;
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return m == n - comps;
}

}  // namespace

int vertex_cover_number(const Graph& g, int bound) {
    Graph s = g.simplified();
    if (s.vertex_count() > bound)
        throw CapExceeded("vertex_cover_number: graph exceeds small-exact bound " +
                          std::to_string(bound));
    std::vector<char> removed(s.vertex_count(), 0);
    for (int k = 0; k <= s.vertex_count(); ++k)
        if (vc_branch(s, removed, k) >= 0) return k;
    return s.vertex_count();
}

int feedback_vertex_number(const Graph& g, int bound) {
    Graph s = g.simplified();
    int n = s.vertex_count();
    if (n > bound)
        throw CapExceeded("feedback_vertex_number: graph exceeds small-exact bound " +
                          std::to_string(bound));
    std::vector<char> removed(n, 0);
    if (acyclic_without(s, removed)) return 0;
    for (int k = 1; k <= n; ++k) {
        std::vector<int> pick(k);
        // enumerate k-subsets of [n]
        for (int i = 0; i < k; ++i) pick[i] = i;
        while (true) {
            std::fill(removed.begin(), removed.end(), 0);
            for (int v : pick) removed[v] = 1;
            if (acyclic_without(s, removed)) return k;
            int i = k - 1;
            while (i >= 0 && pick[i] == n - k + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return n;
}

int feedback_edge_number(const Graph& g) {
    Graph s = g.simplified();
    return s.edge_count() - s.vertex_count() + static_cast<int>(s.components().size());
}

int parameter(const Graph& g, StructuralParameter which, const ParameterConfig& cfg) {
    switch (which) {
        case StructuralParameter::VertexCover: return vertex_cover_number(g, cfg.small_exact_bound);
        case StructuralParameter::FeedbackVertexSet:
            return feedback_vertex_number(g, cfg.small_exact_bound);
        case StructuralParameter::FeedbackEdgeSet: return feedback_edge_number(g);
        case StructuralParameter::MaxDegree: return g.max_degree();
    }
    throw std::logic_error("parameter: unknown kind");
}

}  // namespace gstp
