#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gstp {

using Vertex = int;

/// Unordered edge; canonical form has u <= v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    bool loop() const { return u == v; }
    auto operator<=>(const Edge&) const = default;
};

struct EdgeWithMult {
    Edge e;
    int mult = 1;
};

/// Result of an operation that renumbers vertices. map[old] is the new
/// index, or -1 if the vertex was removed.
struct VertexMap {
    std::vector<int> map;

    Vertex at(Vertex old) const;
    std::vector<Vertex> image(const std::vector<Vertex>& vs) const;
};

struct ContractResult;
struct SuppressResult;
struct SubdivideResult;
struct InducedResult;

/// Vertex-indexed multigraph with edge multiplicities. Simple graphs are
/// the multiplicity-1, loop-free case; loops are only legal when the
/// multigraph flag is set. Values are immutable in spirit: all rewriting
/// operations return new graphs.
class Graph {
public:
    explicit Graph(int vertex_count = 0, bool multigraph = false);

    int vertex_count() const { return n_; }
    bool multigraph() const { return multigraph_; }
    bool is_simple() const;

    void add_edge(Vertex u, Vertex v, int mult = 1);
    void remove_edge(Vertex u, Vertex v, int mult = 1);

    int multiplicity(Vertex u, Vertex v) const;
    bool has_edge(Vertex u, Vertex v) const { return multiplicity(u, v) > 0; }

    /// Number of edges counted with multiplicity.
    int edge_count() const;
    /// Number of distinct endpoint pairs.
    int distinct_edge_count() const { return static_cast<int>(edges_.size()); }

    /// Degree; loops count twice, parallel edges count each.
    int degree(Vertex v) const;
    int max_degree() const;

    std::vector<Vertex> neighbors(Vertex v) const;
    std::vector<EdgeWithMult> edges() const;

    std::vector<std::vector<Vertex>> components() const;
    std::vector<EdgeWithMult> cut_edges(const std::vector<Vertex>& s) const;
    bool connected() const;

    /// Merge the vertex set s into a single vertex. In multiplicity mode
    /// parallel edges survive and internal edges vanish (loops are
    /// removed); in simple mode the result is simplified.
    ContractResult contract(const std::vector<Vertex>& s, bool keep_multiplicity) const;

    /// Remove a vertex of degree <= 2, joining its neighbors. Degree 2
    /// with equal neighbor endpoints would create a loop, which is
    /// removed. Throws on degree > 2.
    SuppressResult suppress(Vertex v) const;

    /// Replace one copy of edge e by a 2-path through a fresh vertex
    /// (index vertex_count()).
    SubdivideResult subdivide(Edge e) const;

    InducedResult induced(const std::vector<Vertex>& keep) const;
    InducedResult remove_vertices(const std::vector<Vertex>& drop) const;

    /// Underlying simple graph: loops dropped, multiplicities collapsed.
    Graph simplified() const;

    /// Append k isolated vertices; returns the index of the first one.
    Vertex add_vertices(int k);

    bool operator==(const Graph& other) const;

private:
    void check_vertex(Vertex v) const;

    int n_;
    bool multigraph_;
    std::map<Edge, int> edges_;
};

struct ContractResult {
    Graph graph;
    Vertex representative = 0;
    VertexMap vmap;
};

struct SuppressResult {
    Graph graph;
    VertexMap vmap;
};

struct SubdivideResult {
    Graph graph;
    Vertex new_vertex = 0;
};

struct InducedResult {
    Graph graph;
    VertexMap vmap;
};

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);

}  // namespace gstp
