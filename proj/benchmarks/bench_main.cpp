#include "mopo/cascade.hpp"
#include "mopo/classical.hpp"
#include "mopo/config.hpp"
#include "mopo/gain.hpp"
#include "mopo/grid.hpp"
#include "mopo/temporal.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

namespace {

mopo::CrystalConfig ktp(double g) {
    auto cfg = mopo::load_crystal_config(std::string(MOPO_DATA_DIR) + "/configs/ktp_reference.ini");
    cfg.gain = g;
    return cfg;
}

void BM_GainTable(benchmark::State& state) {
    const auto cfg = ktp(1.0);
    const auto grid = mopo::uniform_grid_points(64.0 * mopo::derived_scales(cfg).omega_gvs,
                                                static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(mopo::gain_coefficients(cfg, grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GainTable)->Arg(1 << 12)->Arg(1 << 16);

void BM_BiphotonTransform(benchmark::State& state) {
    const double eps = 1.0 / static_cast<double>(state.range(0));
    const auto cfg = ktp(std::numbers::pi / 2.0 - eps);
    const auto table = mopo::gain_coefficients(cfg, mopo::transform_grid(mopo::derived_scales(cfg), cfg.gain));
    for (auto _ : state) benchmark::DoNotOptimize(mopo::biphoton_time(table));
    state.counters["points"] = static_cast<double>(table.size());
}
BENCHMARK(BM_BiphotonTransform)->Arg(5)->Arg(50);

void BM_Efficiency(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(mopo::efficiency(2.0));
}
BENCHMARK(BM_Efficiency);

void BM_ShootingBvp(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(mopo::stationary_bvp(2.0));
}
BENCHMARK(BM_ShootingBvp);

void BM_SpontaneousMc(benchmark::State& state) {
    const auto cfg = ktp(1e-3);
    for (auto _ : state) benchmark::DoNotOptimize(mopo::sample_spontaneous(cfg, 100000, 1));
    state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_SpontaneousMc);

}  // namespace
BENCHMARK_MAIN();
