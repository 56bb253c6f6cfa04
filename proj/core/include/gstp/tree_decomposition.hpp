#pragma once

#include <optional>

#include "gstp/graph.hpp"
#include "gstp/io.hpp"

namespace gstp {

enum class TdNodeKind { Plain, Leaf, Introduce, Forget, Join };

struct TdNode {
    int parent = -1;
    std::vector<int> children;
    std::vector<Vertex> bag;  // sorted
    TdNodeKind kind = TdNodeKind::Plain;
    Vertex pivot = -1;  // introduced/forgotten vertex for those kinds
};

struct TreeDecomposition {
    std::vector<TdNode> nodes;
    int root = 0;

    int width() const;
    int node_count() const { return static_cast<int>(nodes.size()); }
    std::vector<int> topo_order() const;  // parents before children
};

struct ValidationReport {
    bool ok = true;
    std::string violation;
    explicit operator bool() const { return ok; }
};

ValidationReport validate_tree_decomposition(const TreeDecomposition& td, const Graph& g);

/// Decomposition of exact width when the graph has at most exact_cap
/// vertices (search over elimination orderings with memoization on
/// vertex subsets), greedy min-fill beyond. The result is validated.
TreeDecomposition tree_decomposition(const Graph& g, int exact_cap = 15);

/// Exact treewidth for graphs within the cap.
int treewidth(const Graph& g, int exact_cap = 15);

/// Nice form: empty root and leaf bags, each inner node an introduce,
/// forget, or join; width unchanged.
TreeDecomposition make_nice(const TreeDecomposition& td, const Graph& g);

TreeDecomposition decomposition_from_raw(const RawDecomposition& raw, const Graph& g);
RawDecomposition decomposition_to_raw(const TreeDecomposition& td);

}  // namespace gstp
