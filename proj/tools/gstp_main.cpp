// Command-line front end: solve / verify / gen / params / augment / bench.
// Exit codes: 0 command succeeded (FEASIBLE or INFEASIBLE alike),
// 1 usage or parse error, 2 solver cap exceeded, 3 bench disagreement.

#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "gstp/families.hpp"
#include "gstp/fn_ilp.hpp"
#include "gstp/fracture.hpp"
#include "gstp/ilp.hpp"
#include "gstp/io.hpp"
#include "gstp/oracle.hpp"
#include "gstp/params.hpp"
#include "gstp/tree_cut.hpp"
#include "gstp/tw_dp.hpp"

using namespace gstp;

namespace {

struct Caps {
    int twdp_demand = 4;
    int twdp_width = 4;
    int fnilp_modulator = 3;
    int fnilp_ts = 1;
    int oracle_edges = 16;
    int oracle_demand = 4;
};

Caps load_caps(const std::string& path) {
    Caps caps;
    if (path.empty()) return caps;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    std::string key;
    long value;
    std::map<std::string, int*> keys{
        {"twdp_demand_cap", &caps.twdp_demand},   {"twdp_width_cap", &caps.twdp_width},
        {"fnilp_modulator_cap", &caps.fnilp_modulator}, {"fnilp_ts_cap", &caps.fnilp_ts},
        {"oracle_edge_budget", &caps.oracle_edges}, {"oracle_demand_budget", &caps.oracle_demand}};
    while (in >> key >> value) {
        auto it = keys.find(key);
        if (it == keys.end()) throw std::runtime_error("unknown config key " + key);
        *it->second = static_cast<int>(value);
    }
    return caps;
}

enum class Algo { Oracle, TwDp, FnIlp, Auto };

struct SolveOutcome {
    bool feasible = false;
    std::optional<Solution> witness;
    std::string branch;
};

SolveOutcome run_solver(const GstpInstance& inst, Algo algo, const Caps& caps, bool want_witness,
                        const std::optional<TreeDecomposition>& td,
                        const std::string& dump_lp_path) {
    SolveOutcome out;
    switch (algo) {
        case Algo::Oracle: {
            OracleConfig oc;
            oc.edge_budget = caps.oracle_edges;
            oc.demand_budget = caps.oracle_demand;
            OracleResult r = solve_exact(inst, oc);
            if (r.status == OracleStatus::BudgetExceeded)
                throw CapExceeded("oracle: edge budget " + std::to_string(caps.oracle_edges) +
                                  " or demand budget " + std::to_string(caps.oracle_demand) +
                                  " exceeded");
            out.feasible = r.feasible();
            out.witness = r.witness;
            out.branch = "oracle";
            return out;
        }
        case Algo::TwDp: {
            TwDpConfig cfg;
            cfg.total_demand_cap = caps.twdp_demand;
            cfg.width_cap = caps.twdp_width;
            cfg.want_witness = want_witness;
            TwDpResult r = decide_tw(inst, td, cfg);
            out.feasible = r.decision == TwDecision::Feasible;
            out.witness = r.witness;
            out.branch = "twdp";
            return out;
        }
        case Algo::FnIlp: {
            if (want_witness)
                throw std::runtime_error("fnilp decides feasibility only; --witness unsupported");
            FnIlpConfig cfg;
            cfg.max_modulator = caps.fnilp_modulator;
            cfg.max_ts = caps.fnilp_ts;
            FnIlpTrace trace;
            Decision d = decide_by_fracture(inst, cfg, &trace);
            if (!dump_lp_path.empty() && trace.model) {
                std::ofstream lp(dump_lp_path);
                dump_lp(lp, *trace.model);
            }
            out.feasible = d == Decision::Feasible;
            out.branch = "fnilp";
            return out;
        }
        case Algo::Auto: {
            for (Algo a : {Algo::TwDp, Algo::FnIlp, Algo::Oracle}) {
                try {
                    if (a == Algo::FnIlp && want_witness) continue;
                    return run_solver(inst, a, caps, want_witness, td, dump_lp_path);
                } catch (const CapExceeded&) {
                }
            }
            throw CapExceeded("auto: no solver applicable at this scale");
        }
    }
    throw std::logic_error("unreachable");
}

int cmd_solve(const std::string& path, const std::string& algo_name, bool witness,
              const std::string& td_path, const std::string& config, const std::string& dump) {
    GstpInstance inst = read_instance_file(path);
    Caps caps = load_caps(config);
    Algo algo = Algo::Auto;
    if (algo_name == "oracle") algo = Algo::Oracle;
    else if (algo_name == "twdp") algo = Algo::TwDp;
    else if (algo_name == "fnilp") algo = Algo::FnIlp;
    else if (algo_name != "auto") throw CLI::ValidationError("--algo", "unknown algorithm");

    std::optional<TreeDecomposition> td;
    if (!td_path.empty()) {
        RawDecomposition raw = read_decomposition_file(td_path);
        if (raw.tree_cut) throw std::runtime_error("solve --td expects a 'p td' file");
        td = decomposition_from_raw(raw, inst.graph());
    }
    SolveOutcome out = run_solver(inst, algo, caps, witness, td, dump);
    if (witness && out.witness) {
        auto check = verify(inst, *out.witness);
        if (!check.ok) throw std::logic_error("internal: witness failed verify: " + check.violation);
        write_solution(std::cout, *out.witness);
    }
    std::cout << (out.feasible ? "FEASIBLE" : "INFEASIBLE") << "\n";
    return 0;
}

int cmd_verify(const std::string& inst_path, const std::string& sol_path) {
    GstpInstance inst = read_instance_file(inst_path);
    Solution sol = read_solution_file(sol_path);
    auto r = verify(inst, sol);
    std::cout << (r.ok ? "VALID" : "INVALID: " + r.violation) << "\n";
    return 0;
}

int cmd_gen(const std::string& name, const std::vector<int>& params, std::uint64_t seed,
            const std::string& out_path) {
    FamilyValue v = family(name, params, seed);
    std::ostringstream os;
    if (std::holds_alternative<Graph>(v)) write_graph(os, std::get<Graph>(v));
    else write_instance(os, std::get<GstpInstance>(v));
    if (out_path.empty()) std::cout << os.str();
    else {
        std::ofstream f(out_path);
        f << os.str();
    }
    return 0;
}

int cmd_params(const std::string& path, const std::string& which) {
    GstpInstance inst = read_instance_file(path);
    const Graph& g = inst.graph();
    if (which == "vc") std::cout << "vc " << vertex_cover_number(g) << "\n";
    else if (which == "fvs") std::cout << "fvs " << feedback_vertex_number(g) << "\n";
    else if (which == "fen") std::cout << "fen " << feedback_edge_number(g) << "\n";
    else if (which == "fracture") {
        auto [s, k] = fracture_modulator(g);
        std::cout << "fracture " << k << "\n";
    } else throw CLI::ValidationError("params", "unknown parameter " + which);
    return 0;
}

int cmd_augment(const std::string& path, const std::string& mode) {
    GstpInstance inst = read_instance_file(path);
    AugmentMode m;
    if (mode == "vertex") m = AugmentMode::Vertex;
    else if (mode == "clique") m = AugmentMode::Clique;
    else throw CLI::ValidationError("augment", "mode must be vertex or clique");
    AugmentedGraph aug = augment(inst, m);
    if (m == AugmentMode::Vertex)
        for (int t = 0; t < inst.terminal_count(); ++t)
            std::cout << "c aug vertex of set " << t << " is " << aug.aug_vertex_of[t] << "\n";
    write_graph(std::cout, aug.graph);
    return 0;
}

struct BenchRow {
    std::string a, b;
    int instances = 0;
    int agreements = 0;
    int disagreements = 0;
};

int cmd_bench(int count, std::uint64_t seed, std::vector<std::string> algos, int jobs,
              const std::string& config, bool dp_sweep) {
    Caps caps = load_caps(config);
    if (algos.empty()) algos = {"oracle", "twdp"};
    for (const auto& a : algos)
        if (a != "oracle" && a != "twdp" && a != "fnilp")
            throw CLI::ValidationError("--algos", "unknown algorithm " + a);

    auto decide = [&](const std::string& name,
                      const GstpInstance& inst) -> std::optional<bool> {
        try {
            Algo a = name == "oracle" ? Algo::Oracle : name == "twdp" ? Algo::TwDp : Algo::FnIlp;
            return run_solver(inst, a, caps, false, std::nullopt, "").feasible;
        } catch (const CapExceeded&) {
            return std::nullopt;
        }
    };

    // per-instance verdict matrix, computed in parallel chunks
    std::vector<std::vector<std::optional<bool>>> verdicts(count);
    auto work = [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            GstpInstance inst = random_instance(RandomInstanceParams{}, seed + i);
            for (const auto& name : algos) verdicts[i].push_back(decide(name, inst));
        }
    };
    jobs = std::max(1, jobs);
    std::vector<std::future<void>> futures;
    int chunk = (count + jobs - 1) / jobs;
    for (int j = 0; j < jobs; ++j) {
        int lo = j * chunk, hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        futures.push_back(std::async(std::launch::async, work, lo, hi));
    }
    for (auto& f : futures) f.get();

    std::vector<BenchRow> rows;
    for (size_t a = 0; a < algos.size(); ++a)
        for (size_t b = a + 1; b < algos.size(); ++b) {
            BenchRow row;
            row.a = algos[a];
            row.b = algos[b];
            for (int i = 0; i < count; ++i) {
                const auto& va = verdicts[i][a];
                const auto& vb = verdicts[i][b];
                if (!va || !vb) continue;
                ++row.instances;
                if (*va == *vb) ++row.agreements;
                else ++row.disagreements;
            }
            rows.push_back(row);
        }
    std::sort(rows.begin(), rows.end(),
              [](const BenchRow& x, const BenchRow& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    bool disagreed = false;
    std::cout << "pair instances agreements disagreements\n";
    for (const auto& r : rows) {
        std::cout << r.a << "/" << r.b << " " << r.instances << " " << r.agreements << " "
                  << r.disagreements << "\n";
        disagreed |= r.disagreements > 0;
    }

    if (dp_sweep) {
        std::cout << "dp-sweep width total_demand max_table\n";
        std::mt19937_64 rng(seed);
        for (int k = 1; k <= 3; ++k)
            for (int sd = 1; sd <= caps.twdp_demand; ++sd) {
                Graph g = random_partial_ktree(8, k, 0.9, rng());
                VertexSet term{0, 1, 2};
                GstpInstance inst = from_stp(g, term, sd);
                TwDpConfig cfg;
                cfg.total_demand_cap = caps.twdp_demand;
                cfg.width_cap = std::max(caps.twdp_width, k);
                TwDpResult r = decide_tw(inst, std::nullopt, cfg);
                std::cout << "dp-sweep " << r.width_used << " " << sd << " " << r.max_table
                          << "\n";
            }
    }
    return disagreed ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact solvers for generalized Steiner tree packing"};
    app.require_subcommand(1);

    std::string inst_path, algo = "auto", td_path, config, dump, sol_path, mode, which;
    bool witness = false;

    auto* solve = app.add_subcommand("solve", "decide an instance file");
    solve->add_option("instance", inst_path, "instance file")->required();
    solve->add_option("--algo", algo, "oracle|twdp|fnilp|auto");
    solve->add_flag("--witness", witness, "print a witness packing before the verdict");
    solve->add_option("--td", td_path, "tree decomposition file for twdp");
    solve->add_option("--config", config, "caps config file (key value lines)");
    solve->add_option("--dump-lp", dump, "write the fnilp selector program to a file");

    auto* ver = app.add_subcommand("verify", "check a solution file against an instance");
    ver->add_option("instance", inst_path, "instance file")->required();
    ver->add_option("solution", sol_path, "solution file")->required();

    std::string family_name;
    std::vector<int> family_params;
    std::uint64_t seed = 0;
    std::string out_path;
    auto* gen = app.add_subcommand("gen", "emit a named family instance");
    gen->add_option("family", family_name, "family name")->required();
    gen->add_option("params", family_params, "integer parameters");
    gen->add_option("--seed", seed, "seed for randomized families");
    gen->add_option("--out", out_path, "output file (default stdout)");

    auto* par = app.add_subcommand("params", "structural parameters of the instance graph");
    par->add_option("instance", inst_path, "instance file")->required();
    par->add_option("which", which, "vc|fvs|fen|fracture")->required();

    auto* augc = app.add_subcommand("augment", "emit the augmented graph");
    augc->add_option("instance", inst_path, "instance file")->required();
    augc->add_option("mode", mode, "vertex|clique")->required();

    int count = 100, jobs = 1;
    std::vector<std::string> algos;
    bool dp_sweep = false;
    auto* bench = app.add_subcommand("bench", "cross-validate solvers on random instances");
    bench->add_option("--count", count, "number of instances");
    bench->add_option("--seed", seed, "base seed");
    bench->add_option("--algos", algos, "algorithms to compare");
    bench->add_option("--jobs", jobs, "parallel workers");
    bench->add_option("--config", config, "caps config file");
    bench->add_flag("--dp-sweep", dp_sweep, "log DP table sizes over a width/demand sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) return cmd_solve(inst_path, algo, witness, td_path, config, dump);
        if (ver->parsed()) return cmd_verify(inst_path, sol_path);
        if (gen->parsed()) return cmd_gen(family_name, family_params, seed, out_path);
        if (par->parsed()) return cmd_params(inst_path, which);
        if (augc->parsed()) return cmd_augment(inst_path, mode);
        if (bench->parsed()) return cmd_bench(count, seed, algos, jobs, config, dp_sweep);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
