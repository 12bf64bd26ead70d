// Serial vs OpenMP kernel comparison. Not wired into ctest; run manually.

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "parallax/edge_table.hpp"
#include "parallax/flag_complex.hpp"
#include "parallax/model.hpp"
#include "parallax/parallax_table.hpp"

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

parallax::point_cloud make_ring(std::size_t n) {
    std::vector<double> coords;
    coords.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double angle = 2.0 * std::numbers::pi * double(i) / double(n);
        coords.push_back(std::cos(angle));
        coords.push_back(std::sin(angle));
    }
    return parallax::point_cloud(2, std::move(coords));
}

parallax::probe_config bench_probes() {
    parallax::probe_config config;
    config.disk_steps = 8;
    config.disk_samples = 32;
    config.seed = 17;
    return config;
}

} // namespace

static void bm_edge_table_serial(benchmark::State& state) {
    const auto cloud = make_ring(std::size_t(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(parallax::build_edge_table_serial(cloud, inf));
}
BENCHMARK(bm_edge_table_serial)->Arg(128)->Arg(256);

static void bm_edge_table_parallel(benchmark::State& state) {
    const auto cloud = make_ring(std::size_t(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(parallax::build_edge_table_parallel(cloud, inf));
}
BENCHMARK(bm_edge_table_parallel)->Arg(128)->Arg(256);

static void bm_flag_expand_serial(benchmark::State& state) {
    const auto cloud = make_ring(std::size_t(state.range(0)));
    const auto table = parallax::build_edge_table(cloud, inf);
    std::vector<double> rho;
    for (const auto& e : table.edges) rho.push_back(e.rho_v);
    for (auto _ : state) benchmark::DoNotOptimize(parallax::flag_expand_serial(table, rho, 2));
}
BENCHMARK(bm_flag_expand_serial)->Arg(96)->Arg(160);

static void bm_flag_expand_parallel(benchmark::State& state) {
    const auto cloud = make_ring(std::size_t(state.range(0)));
    const auto table = parallax::build_edge_table(cloud, inf);
    std::vector<double> rho;
    for (const auto& e : table.edges) rho.push_back(e.rho_v);
    for (auto _ : state) benchmark::DoNotOptimize(parallax::flag_expand_parallel(table, rho, 2));
}
BENCHMARK(bm_flag_expand_parallel)->Arg(96)->Arg(160);

static void bm_parallax_table_serial(benchmark::State& state) {
    const auto cloud = make_ring(std::size_t(state.range(0)));
    const auto table = parallax::build_edge_table(cloud, inf);
    auto model = parallax::make_shell({0.0, 0.0}, 0.8, 1.2);
    const auto config = bench_probes();
    for (auto _ : state)
        benchmark::DoNotOptimize(parallax::build_parallax_table_serial(cloud, table, *model, config));
}
BENCHMARK(bm_parallax_table_serial)->Arg(48)->Arg(96);

static void bm_parallax_table_parallel(benchmark::State& state) {
    const auto cloud = make_ring(std::size_t(state.range(0)));
    const auto table = parallax::build_edge_table(cloud, inf);
    auto model = parallax::make_shell({0.0, 0.0}, 0.8, 1.2);
    const auto config = bench_probes();
    for (auto _ : state)
        benchmark::DoNotOptimize(parallax::build_parallax_table_parallel(cloud, table, *model, config));
}
BENCHMARK(bm_parallax_table_parallel)->Arg(48)->Arg(96);

BENCHMARK_MAIN();
