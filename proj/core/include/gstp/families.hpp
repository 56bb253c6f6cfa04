#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "gstp/instance.hpp"

namespace gstp {

// Deterministic constructions used throughout the test fixtures and the
// CLI generator. Everything is a pure function of its arguments (and the
// seed, where one applies).

/// n triangles sharing one center vertex; 2n+1 vertices, 3n edges.
Graph windmill(int n);

/// Star with n leaves around center 0.
Graph star(int n);

/// Center 0 with n outer vertices, each joined by k parallel edges.
Graph star_spokes(int n, int k);

/// Wall of height n: n rows by 2n columns, all horizontal edges, vertical
/// edges on alternating columns. 2n^2 vertices, max degree 3.
Graph wall(int n);

/// n vertex-disjoint triangles.
Graph disjoint_triangles(int n);

Graph grid(int rows, int cols);

/// Star S_i with one terminal pair {center, leaf} per leaf. Its
/// vertex-augmented graph is the windmill W_i.
GstpInstance star_pair_instance(int i);

/// Star S_i with the single terminal set of all leaves.
GstpInstance star_leaves_instance(int i, int demand = 1);

/// 3i isolated vertices partitioned into i terminal triples. The
/// clique-augmented graph is i disjoint triangles, the vertex-augmented
/// graph a forest.
GstpInstance triple_instance(int i);

/// A center vertex plus 4*i^4 isolated 3-vertex paths; one terminal set
/// {center} + path per path.
GstpInstance three_path_instance(int i);

struct RandomInstanceParams {
    int min_vertices = 3;
    int max_vertices = 8;
    int max_edges = 12;
    int max_terminal_sets = 2;
    int max_terminal_size = 4;
    int max_demand = 2;
    int max_total_demand = 3;
};

GstpInstance random_instance(const RandomInstanceParams& p, std::uint64_t seed);

Graph random_graph(int max_vertices, int max_edges, std::uint64_t seed);

/// Random partial k-tree on n vertices (treewidth <= k), for DP sweeps.
Graph random_partial_ktree(int n, int k, double keep_prob, std::uint64_t seed);

using FamilyValue = std::variant<Graph, GstpInstance>;

/// Name-indexed access used by the CLI: graph families take integer
/// params, instance families may take a seed.
FamilyValue family(const std::string& name, const std::vector<int>& params,
                   std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace gstp
