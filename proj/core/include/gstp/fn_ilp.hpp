#pragma once

#include <map>
#include <tuple>

#include "gstp/fracture.hpp"
#include "gstp/ilp.hpp"
#include "gstp/instance.hpp"
#include "gstp/params.hpp"

namespace gstp {

// Decides GSTP through the fracture number of the vertex-augmented
// graph: each component of the augmented graph minus a nice fracture
// modulator S is summarized by the set of interaction patterns
// (configurations) it supports, components are grouped into
// indistinguishability classes, and a single bounded integer program
// over per-class configuration counters decides the instance.

struct FnIlpConfig {
    int max_modulator = 3;        // cap on |S| after nicification
    int max_ts = 1;               // cap on |T_S| (terminal sets with augmented vertex in S)
    long max_configs = 2000000;   // cap on enumerated candidate configurations per component
    int max_host_edges = 22;      // cap on admission host size (edge-mask width)
};

/// Interaction pattern of one component: outside connections it consumes
/// (demand), connections it provides to the rest (supply), and its local
/// contribution to each tree of the terminal sets anchored in the
/// modulator (assign). Keys are sorted subsets of S intersected with the
/// host graph; demand and supply store only nonzero entries over sets of
/// size >= 2, assign stores only nonempty values keyed by
/// (terminal index, tree index, slot index).
struct Configuration {
    std::map<VertexSet, int> demand;
    std::map<VertexSet, int> supply;
    std::map<std::tuple<int, int, int>, VertexSet> assign;

    bool operator==(const Configuration&) const = default;
    bool operator<(const Configuration& o) const {
        return std::tie(demand, supply, assign) < std::tie(o.demand, o.supply, o.assign);
    }
};

/// Shared data for one nicified instance and modulator.
struct ModulatorContext {
    GstpInstance inst;
    AugmentedGraph aug;
    std::vector<Vertex> modulator;       // S, sorted, augmented-graph indexing
    std::vector<Vertex> modulator_real;  // S intersected with the host graph
    std::vector<int> ts_terminals;       // T_S: terminal indices with aug vertex in S
    std::vector<int> tstar_terminals;    // T*: terminal sets contained in S
    int u = 0;                           // binom(2|S|, 2): per-set connection bound

    int host_n() const { return inst.graph().vertex_count(); }
};

ModulatorContext make_context(GstpInstance inst, std::vector<Vertex> modulator);

struct AugComponent {
    std::vector<Vertex> vertices;  // augmented-graph indexing, sorted
};

std::vector<AugComponent> modulator_components(const ModulatorContext& ctx);

/// The local instance a configuration induces on a component under the
/// slot map sigma: the non-augmented part of C+ plus one fresh vertex per
/// unit of demand, with the terminal family Q (component-anchored sets),
/// supply sets and assign sets at their accumulated demands. Augmented
/// vertices remain as isolated placeholders; connections only ever use
/// host-graph edges.
struct ComponentInstance {
    GstpInstance instance;
    std::vector<Vertex> local_of_aug;  // aug vertex -> local index (-1 if absent)
    int fresh_start = 0;               // local index of the first fresh vertex
    std::vector<int> supply_terminals;  // indices into instance.terminals() that are supply sets
};

ComponentInstance component_instance(const ModulatorContext& ctx, const AugComponent& comp,
                                     const Configuration& conf, const std::vector<Vertex>& sigma);

bool admits(const ModulatorContext& ctx, const AugComponent& comp, const Configuration& conf,
            const FnIlpConfig& cfg = {});

bool viable(const ModulatorContext& ctx, const Configuration& conf);

std::vector<Configuration> signature(const ModulatorContext& ctx, const AugComponent& comp,
                                     const FnIlpConfig& cfg = {});

bool indistinguishable(const ModulatorContext& ctx, const AugComponent& a, const AugComponent& b);

struct ComponentClass {
    std::vector<int> members;  // component indices, ascending
};

std::vector<ComponentClass> equivalence_classes(const ModulatorContext& ctx,
                                                const std::vector<AugComponent>& comps);

/// All minimally connected hypergraphs on the vertex set u, returned as
/// sorted lists of hyperedges. A single vertex (or the empty set) is
/// connected on its own, so the answer there is one empty hyperedge set.
std::vector<std::vector<VertexSet>> minimally_connected_hypergraphs(const VertexSet& u);

IlpModel build_selector_ilp(const ModulatorContext& ctx, const std::vector<AugComponent>& comps,
                            const std::vector<ComponentClass>& classes,
                            const std::vector<std::vector<Configuration>>& class_signatures);

/// Standalone feasibility of the hypergraph-assembly sub-model with the
/// per-subset supply fixed: is there a way to serve each in-modulator
/// terminal set its demanded number of minimally connected hypergraphs
/// without drawing any subset more often than supplied?
bool rho_feasible_with_supply(const VertexSet& s_real,
                              const std::vector<std::pair<VertexSet, int>>& tstar_demands,
                              const std::map<VertexSet, long>& supply);

enum class Decision { Feasible, Infeasible };

struct FnIlpTrace {
    std::vector<Vertex> modulator;
    int class_count = 0;
    std::optional<IlpModel> model;  // present unless decided by a reduction rule
};

Decision decide_by_fracture(const GstpInstance& inst, const FnIlpConfig& cfg = {},
                            FnIlpTrace* trace = nullptr);

}  // namespace gstp
