#include <benchmark/benchmark.h>

#include <numbers>

#include "wqed/propagator.hpp"
#include "wqed/renorm.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

// Window sized to hold roughly `modes` momenta around omega0.
wqed::SimulationConfig config_with_modes(long modes) {
    wqed::SimulationConfig cfg;
    cfg.length = 100.0;
    const double half = static_cast<double>(modes) / 2.0 * (2.0 * kPi / cfg.length);
    cfg.bare = {10.0 * kPi, kPi};
    cfg.window = {cfg.bare.omega0 - half, cfg.bare.omega0 + half};
    return cfg;
}

void ApplyInteraction(benchmark::State& state) {
    const wqed::SimulationConfig cfg = config_with_modes(state.range(0));
    const wqed::MomentumGrid grid = wqed::build_grid(cfg);
    const wqed::SingleExcitationState psi = wqed::atom_excited_state(grid);
    double t = 0.0;
    for (auto _ : state) {
        t += 0.01;
        benchmark::DoNotOptimize(wqed::apply_interaction(psi, t, cfg, grid));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(ApplyInteraction)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void Rk4Propagation(benchmark::State& state) {
    const wqed::SimulationConfig cfg = config_with_modes(state.range(0));
    const wqed::MomentumGrid grid = wqed::build_grid(cfg);
    const wqed::WavepacketSpec packet{cfg.bare.omega0, 0.05 * kPi, -25.0, 1};
    const wqed::SingleExcitationState psi = wqed::init_gaussian(grid, packet);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            wqed::propagate(psi, {1.0, 100}, cfg, grid, {false, 1}));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(Rk4Propagation)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void RenormalizeMap(benchmark::State& state) {
    const wqed::BareParams bare{10.0 * kPi, kPi};
    const wqed::FrequencyWindow window{0.0, 15.0 * kPi};
    for (auto _ : state) {
        benchmark::DoNotOptimize(wqed::renormalize(bare, window));
    }
}
BENCHMARK(RenormalizeMap);

}  // namespace

BENCHMARK_MAIN();
