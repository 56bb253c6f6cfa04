#pragma once

#include "gstp/graph.hpp"

namespace gstp {

/// Raised when an input exceeds a solver's configured scale cap.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class StructuralParameter { VertexCover, FeedbackVertexSet, FeedbackEdgeSet, MaxDegree };

struct ParameterConfig {
    int small_exact_bound = 20;  // vertex limit for vc/fvs exact solvers
};

/// Exact structural parameters on the underlying simple graph.
/// vc and fvs are solved by branching / exhaustive search and error out
/// beyond the configured vertex bound; fen uses |E| - |V| + #components.
int parameter(const Graph& g, StructuralParameter which, const ParameterConfig& cfg = {});

int vertex_cover_number(const Graph& g, int bound = 20);
int feedback_vertex_number(const Graph& g, int bound = 20);
int feedback_edge_number(const Graph& g);

}  // namespace gstp
