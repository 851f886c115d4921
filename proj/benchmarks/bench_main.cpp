#include <benchmark/benchmark.h>

#include "otalg/analysis.hpp"
#include "otalg/config.hpp"
#include "otalg/simulation.hpp"

namespace {

using namespace otalg;

void BM_BarrierDistance(benchmark::State& state) {
    const Scenario sc = default_config().scenario;
    const BarrierSet barriers = build_barriers(sc.terrain, sc.barrier_delta);
    Vec3 r{700.0, -420.0, 1300.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(barrier_distance(barriers, r));
        r.z = r.z > 100.0 ? r.z - 0.01 : 1300.0;
    }
}
BENCHMARK(BM_BarrierDistance);

void BM_GuidanceMssOtalg(benchmark::State& state) {
    const Scenario sc = default_config().scenario;
    LanderState s = sc.initial;
    const Vec3 d{-5000.0, -5000.0, 1363.6};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            evaluate_guidance(GuidanceLaw::MssOtalg, s, d, sc.guidance, sc.env.g, 60.0));
    }
}
BENCHMARK(BM_GuidanceMssOtalg);

void BM_DynamicsStep(benchmark::State& state) {
    const Scenario sc = default_config().scenario;
    LanderState s = sc.initial;
    const Vec3 a{1.2, -0.4, 5.1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(s = dynamics_step(s, a, {}, sc.env, 0.01));
        s.t = 0.0;  // keep the loop state bounded
    }
}
BENCHMARK(BM_DynamicsStep);

void BM_SimulateNominal(benchmark::State& state) {
    Scenario sc = default_config().scenario;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_simulation(sc));
    }
}
BENCHMARK(BM_SimulateNominal)->Unit(benchmark::kMillisecond);

void BM_DetectDivertEvents(benchmark::State& state) {
    const TrajectoryLog log = run_simulation(default_config().scenario);
    for (auto _ : state) {
        benchmark::DoNotOptimize(detect_divert_events(log));
    }
}
BENCHMARK(BM_DetectDivertEvents)->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
    ::benchmark::Initialize(&argc, argv);
    if (::benchmark::ReportUnrecognizedArguments(argc, argv)) {
        return 1;
    }
    ::benchmark::RunSpecifiedBenchmarks();
    ::benchmark::Shutdown();
    return 0;
}
