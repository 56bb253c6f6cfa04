#include <benchmark/benchmark.h>

#include "gstp/families.hpp"
#include "gstp/fn_ilp.hpp"
#include "gstp/fracture.hpp"
#include "gstp/oracle.hpp"
#include "gstp/tw_dp.hpp"

using namespace gstp;

static void BM_OracleK4Spanning(benchmark::State& state) {
    GstpInstance inst = from_stp(complete_graph(4), {0, 1, 2, 3}, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_exact(inst).status);
}
BENCHMARK(BM_OracleK4Spanning)->Arg(1)->Arg(2)->Arg(3);

static void BM_TwDpGrid(benchmark::State& state) {
    GstpInstance inst = from_stp(grid(2, static_cast<int>(state.range(0))), {0, 1}, 2);
    TwDpConfig cfg;
    cfg.width_cap = 4;
    for (auto _ : state) benchmark::DoNotOptimize(decide_tw(inst, std::nullopt, cfg).decision);
}
BENCHMARK(BM_TwDpGrid)->Arg(3)->Arg(4)->Arg(5);

static void BM_FractureDeletion(benchmark::State& state) {
    Graph g = random_graph(8, 14, 42);
    int k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(fracture_deletion(g, {k, k}).has_value());
}
BENCHMARK(BM_FractureDeletion)->Arg(1)->Arg(2)->Arg(3);

static void BM_FnIlpPath(benchmark::State& state) {
    GstpInstance inst = from_stp(path_graph(3), {0, 2}, 1);
    for (auto _ : state) benchmark::DoNotOptimize(decide_by_fracture(inst));
}
BENCHMARK(BM_FnIlpPath);

BENCHMARK_MAIN();
