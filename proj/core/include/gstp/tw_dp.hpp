#pragma once

#include <cstdint>
#include <set>

#include "gstp/instance.hpp"
#include "gstp/params.hpp"
#include "gstp/tree_decomposition.hpp"

namespace gstp {

/// One dynamic-programming state over a bag: the tree indices finished
/// below the bag (bot), crossing it (cross), and untouched (top),
/// together with one family of disjoint nonempty bag-subsets per
/// crossing index describing the connectivity its forest pieces have
/// already achieved without bag-internal edges. Index sets are bitmasks
/// over [0, total demand).
struct DpTuple {
    std::uint32_t bot = 0;
    std::uint32_t cross = 0;
    std::vector<std::vector<VertexSet>> partitions;  // one entry per set bit of cross, ascending

    auto operator<=>(const DpTuple&) const = default;

    const std::vector<VertexSet>& blocks_of(int index) const;
};

using DpTable = std::set<DpTuple>;

/// Tree indices 0..total_demand-1 in terminal order, consecutive per set.
std::vector<int> terminal_of_index(const GstpInstance& inst);

DpTable dp_leaf(int total_demand);
DpTable dp_introduce(const DpTable& table, Vertex v, const std::vector<int>& term_of_index,
                     const GstpInstance& inst);
DpTable dp_join(const DpTable& a, const DpTable& b);
DpTable dp_forget(const DpTable& table, Vertex v, const std::vector<Vertex>& bag_after,
                  const std::vector<Edge>& edges_to_bag, const std::vector<char>& below,
                  const std::vector<int>& term_of_index, const GstpInstance& inst);

struct TwDpConfig {
    int total_demand_cap = 4;
    int width_cap = 4;
    int exact_tw_cap = 15;
    bool want_witness = false;
};

enum class TwDecision { Feasible, Infeasible };

struct TwDpResult {
    TwDecision decision = TwDecision::Infeasible;
    std::optional<Solution> witness;
    std::size_t max_table = 0;
    std::vector<std::size_t> table_sizes;  // per decomposition node
    int width_used = 0;
};

/// Full bottom-up run over a nice tree decomposition (computed when none
/// is supplied). Terminal sets with fewer than two vertices are
/// satisfied by trivial trees up front.
TwDpResult decide_tw(const GstpInstance& inst,
                     const std::optional<TreeDecomposition>& supplied = std::nullopt,
                     const TwDpConfig& cfg = {});

struct DispatchConfig {
    TwDpConfig twdp;
    int fnilp_modulator_cap = 3;
    int fnilp_ts_cap = 1;
    int oracle_edge_budget = 16;
    int oracle_demand_budget = 4;
};

struct DispatchResult {
    TwDecision decision = TwDecision::Infeasible;
    std::string branch;  // which solver decided
};

/// Route an STP instance to the cheapest applicable solver: the
/// treewidth DP when both caps fit, the fracture pipeline next, the
/// exhaustive oracle as fallback. Errors when nothing applies.
DispatchResult stp_dispatch(const StpInstance& stp, const DispatchConfig& cfg = {});

}  // namespace gstp
