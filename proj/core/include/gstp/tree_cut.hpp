#pragma once

#include <functional>

#include "gstp/instance.hpp"
#include "gstp/io.hpp"
#include "gstp/params.hpp"

namespace gstp {

struct TcdNode {
    int parent = -1;
    std::vector<int> children;
    std::vector<Vertex> bag;  // sorted; may be empty
};

/// Rooted tree whose bags form a near-partition of the graph's vertices.
struct TreeCutDecomposition {
    std::vector<TcdNode> nodes;
    int root = 0;

    int node_count() const { return static_cast<int>(nodes.size()); }
    std::vector<int> topo_order() const;
    std::vector<int> subtree(int s) const;
};

struct TcdValidation {
    bool ok = true;
    std::string violation;
    explicit operator bool() const { return ok; }
};

TcdValidation validate_tree_cut(const TreeCutDecomposition& tcd, const Graph& g);

/// Vertices in bags at or below each node.
std::vector<std::vector<Vertex>> tcd_y_sets(const TreeCutDecomposition& tcd, const Graph& g);

int adhesion(const TreeCutDecomposition& tcd, const Graph& g, int node);

/// Torso at a node: every other subtree contracted to one peripheral
/// vertex, parallel edges kept, loops removed. Torso vertices 0..k-1 are
/// the core (bag) vertices; the rest are peripheral.
struct Torso {
    Graph graph;
    std::vector<Vertex> core;          // torso index -> graph vertex
    std::vector<int> peripheral_node;  // torso index - |core| -> child node id, or -1 for the top
    int core_size() const { return static_cast<int>(core.size()); }
};

Torso torso(const TreeCutDecomposition& tcd, const Graph& g, int node);

/// Result of exhaustively suppressing low-degree peripheral vertices;
/// needed both for widths and for fake-node detection.
struct CenterResult {
    Graph graph;
    std::vector<int> surviving;         // torso indices, ascending
    std::vector<int> suppressed_order;  // torso indices in suppression order
};

CenterResult three_center(const Torso& t);  // suppress peripheral degree <= 2
CenterResult two_center(const Torso& t);    // suppress peripheral degree <= 1

int width(const TreeCutDecomposition& tcd, const Graph& g);
int slim_width(const TreeCutDecomposition& tcd, const Graph& g);

bool is_thin(const TreeCutDecomposition& tcd, const Graph& g, int node);
std::vector<int> bold_children(const TreeCutDecomposition& tcd, const Graph& g, int node);

struct PredicateReport {
    bool ok = true;
    std::string violation;
    explicit operator bool() const { return ok; }
};

/// Nice: no thin node's outside neighborhood touches a sibling subtree.
PredicateReport is_nice(const TreeCutDecomposition& tcd, const Graph& g);
/// Friendly: nice, and every node has |bold children| + |bag| <= width + 2.
PredicateReport is_friendly(const TreeCutDecomposition& tcd, const Graph& g);
/// Simple node: thin with a single-vertex subtree, adhesion exactly two,
/// and no terminal set crossing its link. Simple decomposition: friendly
/// with every non-root thin node simple.
bool is_simple_node(const GstpInstance& inst, const TreeCutDecomposition& tcd, int node);
PredicateReport is_simple(const GstpInstance& inst, const TreeCutDecomposition& tcd);

std::vector<int> cross_link(const GstpInstance& inst, const std::vector<Vertex>& y_s);
int demand_cross_link(const GstpInstance& inst, const std::vector<Vertex>& y_s);

/// Bold children whose peripheral vertex is suppressed away from the
/// 3-center of the torso at s, in suppression order.
std::vector<int> fake_nodes(const TreeCutDecomposition& tcd, const Graph& g, int s);

/// Insert an empty node under s adopting the fake children a and b.
TreeCutDecomposition expand(const TreeCutDecomposition& tcd, const Graph& g, int s, int a, int b);

/// Expand under s until |bold children| + |bag| <= width + 2.
TreeCutDecomposition blow_up(const TreeCutDecomposition& tcd, const Graph& g, int s);

/// Blow up every node of a nice decomposition; the result is friendly
/// with width at most max(4, input width).
TreeCutDecomposition make_friendly(const TreeCutDecomposition& tcd, const Graph& g);

/// Crossing demand above adhesion anywhere makes the instance trivially
/// negative; otherwise nothing changes.
std::variant<GstpInstance, TrivialNegative> apply_rr_crosslink(const GstpInstance& inst,
                                                               const TreeCutDecomposition& tcd);

/// Remove the bridge over an adhesion-1 link, splitting the one crossing
/// terminal set (if any) at the bridge endpoints.
struct Adh1Result {
    GstpInstance instance;
    TreeCutDecomposition tcd;
};
Adh1Result apply_rr_adh1(const GstpInstance& inst, const TreeCutDecomposition& tcd, int s);

/// The three sub-instances consulted by the thin-node recursion rules
/// for an eligible node (thin, adhesion 2, no crossing terminal set,
/// at least two vertices below). Boundary edges are uv and xy with
/// u, x inside Y_s.
struct ThinNodeSubinstances {
    GstpInstance supply_variant;    // X_s: restriction with one extra demand on {u, x}
    GstpInstance restriction;       // Y_s: the instance restricted to Y_s
    GstpInstance contract_variant;  // Z_s: everything outside contracted into one vertex
    Vertex u = -1, x = -1;          // inside Y_s
    Vertex v = -1, y = -1;          // outside
    std::vector<Vertex> y_s;
};

ThinNodeSubinstances thin_subinstances(const GstpInstance& inst, const TreeCutDecomposition& tcd,
                                       int s);

using SubSolver = std::function<bool(const GstpInstance&)>;  // true = feasible

enum class ThinRule { Supply, Independent, Demand, Negative };

struct ThinReductionResult {
    ThinRule rule = ThinRule::Negative;
    std::optional<GstpInstance> instance;
    std::optional<TreeCutDecomposition> tcd;
};

/// Apply the first applicable of the three thin-node rules, consulting
/// the sub-solver on the sub-instances.
ThinReductionResult apply_thin_reduction(const GstpInstance& inst,
                                         const TreeCutDecomposition& tcd, int s,
                                         const SubSolver& solve);

/// Make a nice decomposition simple: wire each thin non-simple child to
/// its parent through a fresh vertex pair (turning it bold), pad the
/// root with isolated vertices up to the guaranteed width, drop empty
/// leaves. The added parts are disconnected from the host graph, so the
/// instance is equivalent.
struct MakeSimpleResult {
    GstpInstance instance;
    TreeCutDecomposition tcd;
    int target_width = 0;  // w + 4 + max(0, max_s Delta_s)
};

MakeSimpleResult make_simple(const GstpInstance& inst, const TreeCutDecomposition& tcd);

// Fixture constructions for the named decomposition families.

/// Graph family whose canonical nice decomposition has width exactly 5
/// and a node with ell + 2 bold children (ell of them fake).
struct UnlimitedBoldFixture {
    Graph graph;
    TreeCutDecomposition tcd;
    int m_node = 0;  // the node with the long fake chain
};
UnlimitedBoldFixture unlimited_bold_family(int ell);

/// Vertex-augmented three-path family together with the width-4
/// decomposition of the augmented graph.
struct ThreePathFixture {
    GstpInstance instance;
    AugmentedGraph aug;
    TreeCutDecomposition tcd;  // decomposition of aug.graph
};
ThreePathFixture three_path_fixture(int i);

TreeCutDecomposition tree_cut_from_raw(const RawDecomposition& raw, const Graph& g);
RawDecomposition tree_cut_to_raw(const TreeCutDecomposition& tcd);

}  // namespace gstp
