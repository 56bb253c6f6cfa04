#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gstp/graph.hpp"

namespace gstp {

using VertexSet = std::vector<Vertex>;  // sorted, distinct

VertexSet make_vertex_set(std::vector<Vertex> vs);

/// GSTP problem instance: a simple host graph, a family of pairwise
/// distinct terminal vertex-sets, and a positive demand per set.
/// Duplicate input sets are merged at construction by summing demands.
class GstpInstance {
public:
    GstpInstance() = default;
    GstpInstance(Graph g, std::vector<VertexSet> terminals, std::vector<int> demands);

    const Graph& graph() const { return graph_; }
    const std::vector<VertexSet>& terminals() const { return terminals_; }
    const VertexSet& terminal(int i) const { return terminals_.at(i); }
    int demand(int i) const { return demands_.at(i); }
    const std::vector<int>& demands() const { return demands_; }
    int terminal_count() const { return static_cast<int>(terminals_.size()); }
    int total_demand() const;

    /// Instance with terminal sets mapped through a vertex renumbering;
    /// every terminal vertex must survive the map.
    GstpInstance remap(Graph g, const VertexMap& vmap) const;

private:
    Graph graph_;
    std::vector<VertexSet> terminals_;
    std::vector<int> demands_;
};

/// STP instance (single terminal set) kept as its own type for the
/// dispatch frontend.
struct StpInstance {
    Graph graph;
    VertexSet terminals;
    int demand = 1;
};

GstpInstance from_stp(const Graph& g, const VertexSet& t, int d);
GstpInstance from_stp(const StpInstance& stp);
GstpInstance from_edp(const Graph& g, const std::vector<std::pair<Vertex, Vertex>>& pairs);

/// One packed subgraph: an edge set plus the terminal set it serves.
/// An empty edge set represents a single-vertex (or empty) tree and is
/// only valid for terminal sets of size <= 1.
struct SolutionPart {
    std::vector<Edge> edges;
    int terminal_index = 0;
};

struct Solution {
    std::vector<SolutionPart> parts;
};

struct VerifyResult {
    bool ok = true;
    std::string violation;  // first violation found, empty when ok

    explicit operator bool() const { return ok; }
};

VerifyResult verify(const GstpInstance& inst, const Solution& sol);

enum class AugmentMode { Vertex, Clique };

/// Host graph plus the per-terminal-set augmentation of one of the two
/// modes. Vertex mode adds one fresh vertex adjacent to its set (simple
/// output); clique mode adds a parallel clique copy per set (multigraph).
struct AugmentedGraph {
    Graph graph;
    std::vector<Vertex> aug_vertex_of;  // per terminal index; empty in clique mode
    AugmentMode mode = AugmentMode::Vertex;

    bool is_aug_vertex(Vertex v, int host_n) const { return mode == AugmentMode::Vertex && v >= host_n; }
};

AugmentedGraph augment(const GstpInstance& inst, AugmentMode mode);

// ---------------------------------------------------------------------
// Instance-level reduction rules. RR1 drops undersized terminal sets,
// RR2 rejects instances where some vertex is asked for more trees than
// it has edges, RR3 splits along connected components.

struct TrivialNegative {};

/// RR1: remove every terminal set with fewer than two vertices.
GstpInstance apply_rr_sensible(const GstpInstance& inst);

/// RR2 (assumes RR1 applied): trivial negative when a vertex's summed
/// demand exceeds its degree; otherwise the instance unchanged.
std::variant<GstpInstance, TrivialNegative> apply_rr_degree(const GstpInstance& inst);

struct ComponentSplit {
    std::vector<GstpInstance> parts;  // one per component, component order
};

/// RR3: trivial negative when some terminal set spans components;
/// otherwise the instance restricted to each component.
std::variant<ComponentSplit, TrivialNegative> apply_rr_components(const GstpInstance& inst);

}  // namespace gstp
