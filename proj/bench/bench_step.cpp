// Serial reference vs OpenMP step kernels on the clique topology (the
// densest generated graph, so the heaviest per-step load).

#include <benchmark/benchmark.h>

#include "polarsim/dynamics.hpp"
#include "polarsim/scenarios.hpp"

using namespace polarsim;

namespace {

struct Fixture {
    NeighborTable table;
    BeliefConfig in, out;
    explicit Fixture(int n)
        : table(NeighborTable::build(graph_clique(n))),
          in(beliefs_uniform(n)),
          out(n, 0.0) {}
};

void bm_step_cb_serial(benchmark::State& state) {
    Fixture f(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        serial::step_cb(f.table, f.in, f.out);
        benchmark::DoNotOptimize(f.out.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_step_cb_parallel(benchmark::State& state) {
    Fixture f(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        step_cb(f.table, f.in, f.out);
        benchmark::DoNotOptimize(f.out.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_step_classical_serial(benchmark::State& state) {
    Fixture f(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        serial::step_classical(f.table, f.in, f.out);
        benchmark::DoNotOptimize(f.out.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_step_classical_parallel(benchmark::State& state) {
    Fixture f(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        step_classical(f.table, f.in, f.out);
        benchmark::DoNotOptimize(f.out.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(bm_step_cb_serial)->Arg(100)->Arg(1000)->Arg(4000);
BENCHMARK(bm_step_cb_parallel)->Arg(100)->Arg(1000)->Arg(4000);
BENCHMARK(bm_step_classical_serial)->Arg(100)->Arg(1000)->Arg(4000);
BENCHMARK(bm_step_classical_parallel)->Arg(100)->Arg(1000)->Arg(4000);

BENCHMARK_MAIN();
