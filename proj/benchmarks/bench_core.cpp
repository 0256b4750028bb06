#include <benchmark/benchmark.h>

#include "diskfar/lattice.hpp"
#include "diskfar/nearfield.hpp"
#include "diskfar/pipeline.hpp"
#include "diskfar/radiation.hpp"

using namespace diskfar;

namespace {

DipoleArray trace3_dipoles() {
    const RunConfig cfg;
    const auto trace = hex_trace(3, cfg.lattice.a);
    std::vector<HolePosition> holes;
    for (const auto& t : trace) holes.push_back({t.x, t.y, 3});
    const auto field = analytic_mode(cfg.disk, cfg.mode);
    return sample_currents(field, holes, false, cfg.wavenumber(), cfg.impedance());
}

} // namespace

static void FarFieldTrace3(benchmark::State& state) {
    const auto dipoles = trace3_dipoles();
    const auto grid = SphericalGrid::full_sphere(static_cast<double>(state.range(0)) / 10.0);
    for (auto _ : state) {
        auto ff = dipole_farfield(dipoles, grid);
        benchmark::DoNotOptimize(ff.s_r.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()) *
                            static_cast<int64_t>(dipoles.size()));
}
BENCHMARK(FarFieldTrace3)->Arg(20)->Arg(10)->Arg(5)->Unit(benchmark::kMillisecond);

static void FarFieldThreads(benchmark::State& state) {
    const auto dipoles = trace3_dipoles();
    const auto grid = SphericalGrid::full_sphere(0.5);
    for (auto _ : state) {
        auto ff = dipole_farfield(dipoles, grid, FarFieldMode::fraunhofer(),
                                  static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(ff.s_r.data());
    }
}
BENCHMARK(FarFieldThreads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void GenerateLattice(benchmark::State& state) {
    const LatticeSpec spec{0.5168, 0.2, 0.2931, 0.013, 0.007};
    for (auto _ : state) {
        auto holes = generate_lattice(spec, static_cast<double>(state.range(0)));
        benchmark::DoNotOptimize(holes.data());
    }
}
BENCHMARK(GenerateLattice)->Arg(2)->Arg(8)->Arg(32);

static void CollectionEfficiency(benchmark::State& state) {
    const auto ff = dipole_farfield(trace3_dipoles(), SphericalGrid::full_sphere(0.5));
    for (auto _ : state) {
        benchmark::DoNotOptimize(collection_efficiency(ff, 0.7, 1.4));
    }
}
BENCHMARK(CollectionEfficiency)->Unit(benchmark::kMillisecond);

static void PipelineEtaCol(benchmark::State& state) {
    RunConfig cfg;
    cfg.grid_resolution_deg = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_metric(cfg, Metric::eta_col));
    }
}
BENCHMARK(PipelineEtaCol)->Arg(20)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
