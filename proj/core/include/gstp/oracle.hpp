#pragma once

#include <chrono>
#include <optional>

#include "gstp/instance.hpp"

namespace gstp {

struct OracleConfig {
    int edge_budget = 16;
    int demand_budget = 4;
    std::optional<std::chrono::milliseconds> time_budget;
};

enum class OracleStatus { Feasible, Infeasible, BudgetExceeded };

struct OracleResult {
    OracleStatus status = OracleStatus::Infeasible;
    std::optional<Solution> witness;  // present iff Feasible

    bool feasible() const { return status == OracleStatus::Feasible; }
};

/// Exhaustive GSTP decision with witness. Feasible answers come with a
/// Solution that passes verify; Infeasible means the complete search
/// finished. Trees are enumerated as inclusion-minimal connected edge
/// sets containing their terminal set, in deterministic (sorted-edge)
/// order, with lexicographic symmetry breaking between trees of the same
/// terminal set.
OracleResult solve_exact(const GstpInstance& inst, const OracleConfig& cfg = {});

/// Enumerate the inclusion-minimal connected edge sets of g that contain
/// the terminal set, as sorted edge lists. Exposed for tests and for the
/// admission search. Requires |E(g)| <= 30.
std::vector<std::vector<Edge>> minimal_steiner_trees(const Graph& g, const VertexSet& terminal);

}  // namespace gstp
