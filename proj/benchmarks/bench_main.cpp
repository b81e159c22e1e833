#include <benchmark/benchmark.h>

#include "ettp/annealer.hpp"
#include "ettp/instance_gen.hpp"
#include "ettp/model.hpp"
#include "ettp/robustness.hpp"
#include "ettp/room_assign.hpp"

using namespace ettp;

namespace {

GeneratedInstance& scenario1_instance() {
    static GeneratedInstance g = generate_instance(scenario_preset("scenario1"), 1);
    return g;
}

SlotProblem slot_of(const Instance& inst, const Timetable& tt, int slot) {
    SlotProblem p;
    for (int e = 0; e < inst.exam_count(); ++e)
        if (tt.slots[e] == slot) p.exams.push_back({e, inst.students(e), {}});
    for (int r = 0; r < inst.room_count(); ++r) p.rooms.push_back({r, inst.room_capacity(r)});
    return p;
}

// Densest slot of the greedy seeding; the solver's worst realistic case.
SlotProblem dense_slot() {
    const GeneratedInstance& g = scenario1_instance();
    const Timetable tt = *initial_heuristic(g.instance);
    int best_slot = 0;
    size_t best_count = 0;
    for (int t = 0; t < g.instance.timeslot_count(); ++t) {
        size_t count = 0;
        for (int e = 0; e < g.instance.exam_count(); ++e)
            if (tt.slots[e] == t) ++count;
        if (count > best_count) {
            best_count = count;
            best_slot = t;
        }
    }
    return slot_of(g.instance, tt, best_slot);
}

}  // namespace

static void BM_GenerateScenario1(benchmark::State& state) {
    const ScenarioConfig config = scenario_preset("scenario1");
    std::uint64_t seed = 0;
    for (auto _ : state) {
        GeneratedInstance g = generate_instance(config, ++seed);
        benchmark::DoNotOptimize(g.instance.exam_count());
    }
}
BENCHMARK(BM_GenerateScenario1);

static void BM_SoftPenalties(benchmark::State& state) {
    const GeneratedInstance& g = scenario1_instance();
    const Timetable tt = *initial_heuristic(g.instance);
    const Weights w;
    for (auto _ : state) {
        PenaltyBreakdown p = soft_penalties(g.instance, tt, w, true);
        benchmark::DoNotOptimize(p.weighted);
    }
}
BENCHMARK(BM_SoftPenalties);

static void BM_ObjectiveDelta(benchmark::State& state) {
    const GeneratedInstance& g = scenario1_instance();
    const Timetable tt = *initial_heuristic(g.instance);
    const Weights w;
    const PenaltyBreakdown current = soft_penalties(g.instance, tt, w, false);
    SlotSwap move;
    move.slot_a = tt.slots[0];
    move.slot_b = (tt.slots[0] + 5) % g.instance.timeslot_count();
    move.to_b = {0};
    for (auto _ : state) {
        PenaltyDelta d = objective_delta(g.instance, tt, current, move, w, false);
        benchmark::DoNotOptimize(d.weighted);
    }
}
BENCHMARK(BM_ObjectiveDelta);

static void BM_KempeChain(benchmark::State& state) {
    const GeneratedInstance& g = scenario1_instance();
    const Timetable tt = *initial_heuristic(g.instance);
    for (auto _ : state) {
        KempeChain chain = kempe_chain(g.instance, tt, 0,
                                       (tt.slots[0] + 5) % g.instance.timeslot_count());
        benchmark::DoNotOptimize(chain.from_current.size());
    }
}
BENCHMARK(BM_KempeChain);

static void BM_FindFeasibleDenseSlot(benchmark::State& state) {
    const SlotProblem problem = dense_slot();
    for (auto _ : state) {
        SlotSolveResult r = find_feasible(problem);
        benchmark::DoNotOptimize(r.status);
    }
}
BENCHMARK(BM_FindFeasibleDenseSlot);

static void BM_FindPcbettOptimalDenseSlot(benchmark::State& state) {
    const SlotProblem problem = dense_slot();
    for (auto _ : state) {
        SlotSolveResult r = find_pcbett_optimal(problem);
        benchmark::DoNotOptimize(r.status);
    }
}
BENCHMARK(BM_FindPcbettOptimalDenseSlot);

static void BM_AnnealNominal1k(benchmark::State& state) {
    const GeneratedInstance& g = scenario1_instance();
    AnnealParams params;
    params.iterations = 1000;
    params.cooling_limit = 200;
    params.repetitions = 1;
    for (auto _ : state) {
        auto result = anneal(g.instance, Weights{}, params);
        benchmark::DoNotOptimize(result->best_penalties.weighted);
    }
}
BENCHMARK(BM_AnnealNominal1k);

static void BM_AnnealPcbett1k(benchmark::State& state) {
    const GeneratedInstance& g = scenario1_instance();
    AnnealParams params;
    params.iterations = 1000;
    params.cooling_limit = 200;
    params.repetitions = 1;
    params.pcbett_mode = true;
    for (auto _ : state) {
        auto result = anneal(g.instance, Weights{}, params);
        benchmark::DoNotOptimize(result->best_penalties.weighted);
    }
}
BENCHMARK(BM_AnnealPcbett1k);

static void BM_DisturbanceEvaluation(benchmark::State& state) {
    const GeneratedInstance& g = scenario1_instance();
    const Timetable tt = *initial_heuristic(g.instance);
    for (auto _ : state) {
        RobustnessReport report = evaluate_robustness(g.instance, tt, 10, 0.2, 7);
        benchmark::DoNotOptimize(report.rows.size());
    }
}
BENCHMARK(BM_DisturbanceEvaluation);

BENCHMARK_MAIN();
