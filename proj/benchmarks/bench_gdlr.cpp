#include "gdlr/asp_encoding.hpp"
#include "gdlr/checker.hpp"
#include "gdlr/properties.hpp"
#include "gdlr/solver.hpp"

#include <benchmark/benchmark.h>

#include <string>

using namespace gdlr;

namespace {

std::string data(const std::string& name) {
    return std::string(GDLR_BENCH_DATA) + "/" + name;
}

RepairTask left_right_task() {
    RepairTask task;
    task.desc = load_game_file(data("left_right.gdl"));
    PropertySet ps = load_properties_file(data("left_right.props"), task.desc);
    task.positive = ps.positive;
    task.negative = ps.negative;
    return task;
}

void BM_LoadTicTacToe(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(load_game_file(data("ttt.gdl")));
    }
}
BENCHMARK(BM_LoadTicTacToe)->Unit(benchmark::kMillisecond);

void BM_EvaluateInitialState(benchmark::State& state) {
    Game g(load_game_file(data("ttt.gdl")));
    State s0 = g.initial_state();
    for (auto _ : state) {
        benchmark::DoNotOptimize(g.evaluate(s0));
    }
}
BENCHMARK(BM_EvaluateInitialState);

// Fresh checker per iteration so the state cache starts empty.
void BM_CheckPlay(benchmark::State& state) {
    GameDescription d = load_game_file(data("ttt.gdl"));
    Game g(d);
    Formula play = macro_play(d, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        ModelChecker mc(g);
        benchmark::DoNotOptimize(mc.models(play).holds);
    }
}
BENCHMARK(BM_CheckPlay)->Arg(3)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_SolveLeftRight(benchmark::State& state) {
    RepairTask task = left_right_task();
    task.max_solutions = static_cast<std::size_t>(state.range(0));
    task.jobs = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_mrp(task));
    }
}
BENCHMARK(BM_SolveLeftRight)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_EmitGuessCheckTicTacToe(benchmark::State& state) {
    RepairTask task;
    task.desc = load_game_file(data("ttt_broken.gdl"));
    PropertySet ps = load_properties_file(data("wf_fd_tt.props"), task.desc);
    task.positive = ps.positive;
    task.negative = ps.negative;
    task.cost = CostFunction::edit();
    for (auto _ : state) {
        benchmark::DoNotOptimize(asp::emit_guess_check(task));
    }
}
BENCHMARK(BM_EmitGuessCheckTicTacToe)->Unit(benchmark::kMillisecond);

} // namespace

// libbenchmark_main.a is shipped as LTO bytecode on some distributions.
BENCHMARK_MAIN();
