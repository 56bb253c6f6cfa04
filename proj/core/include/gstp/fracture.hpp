#pragma once

#include <optional>

#include "gstp/instance.hpp"

namespace gstp {

struct FractureQuery {
    int k = 0;  // component-size bound
    int d = 0;  // deletion-set size
};

/// Decide whether deleting exactly d vertices of g leaves every component
/// with at most k vertices. Feasible answers return such a set (sorted);
/// Infeasible (nullopt) is exact. Three-case branching recursion: small
/// instances are rejected outright, connected graphs branch on a
/// BFS-grown connected set of k+1 vertices, and disconnected graphs
/// combine per-component deletion minima with early abort.
std::optional<std::vector<Vertex>> fracture_deletion(const Graph& g, FractureQuery q);

/// Minimum fracture modulator: smallest S such that every component of
/// g - S has at most |S| vertices, found via fracture_deletion(g, (k,k))
/// for k = 1, 2, ...
std::pair<std::vector<Vertex>, int> fracture_modulator(const Graph& g);

bool is_fracture_deletion_set(const Graph& g, const std::vector<Vertex>& s, int k);

/// A fracture modulator X of the vertex-augmented graph is *nice* when
/// the modulator is edgeless inside the host graph and every terminal
/// set whose augmented vertex lies in X meets at least two components of
/// the augmented graph minus X.
bool is_nice_modulator(const GstpInstance& inst, const std::vector<Vertex>& s,
                       std::string* why = nullptr);

struct NiceModulatorResult {
    GstpInstance instance;        // equivalent instance (subdivisions + padding)
    std::vector<Vertex> modulator;  // nice modulator of augment(instance, Vertex)
    std::vector<int> vertex_map;  // old host vertex -> new host vertex
};

/// Turn a fracture modulator X of augment(inst, Vertex) into a nice one:
/// subdivide every host edge inside X, drop modulator vertices violating
/// the two-components condition, and pad with isolated host vertices
/// until the remainder is again a modulator. |S| <= 2|X|.
NiceModulatorResult make_nice_modulator(const GstpInstance& inst, const std::vector<Vertex>& x);

}  // namespace gstp
