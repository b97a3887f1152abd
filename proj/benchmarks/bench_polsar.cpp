#include <benchmark/benchmark.h>

#include <random>

#include "polsar/divergence.hpp"
#include "polsar/orientation.hpp"
#include "polsar/pipeline.hpp"
#include "polsar/powers.hpp"
#include "polsar/scene.hpp"
#include "polsar/wishart.hpp"

using namespace polsar;

namespace {

CoherencyMatrix noisy_urban(std::uint64_t seed) {
    return wishart_sample(rotate_coherency(archetype("urban_aligned"), RotationAngle::from_degrees(-15.0)), 9, seed);
}

T3Raster urban_raster(int rows, int cols) {
    SceneSpec s;
    s.rows = rows;
    s.cols = cols;
    s.seed = 1;
    s.regions.push_back({"urban", 0, 0, rows, cols, archetype("urban_aligned"), 15.0});
    return to_t3(generate_scene(s).pixels);
}

}  // namespace

static void BM_LeeOa(benchmark::State& state) {
    const auto t = noisy_urban(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lee_oa(t));
    }
}
BENCHMARK(BM_LeeOa);

static void BM_SdOaPixel(benchmark::State& state) {
    SearchConfig cfg;
    cfg.grid_step = deg_to_rad(static_cast<double>(state.range(0)) / 100.0);
    const OaSearch search(cfg);
    const auto t = noisy_urban(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(search.estimate(t));
    }
    state.SetLabel("grid step " + std::to_string(state.range(0) / 100.0).substr(0, 4) + " deg");
}
BENCHMARK(BM_SdOaPixel)->Arg(10)->Arg(50)->Arg(100);

static void BM_Y4O(benchmark::State& state) {
    const auto t = noisy_urban(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(y4o_decompose(t));
    }
}
BENCHMARK(BM_Y4O);

static void BM_Y4R(benchmark::State& state) {
    const auto t = noisy_urban(4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(y4r_decompose(t));
    }
}
BENCHMARK(BM_Y4R);

static void BM_SdY4OPixel(benchmark::State& state) {
    const OaSearch search(SearchConfig{});
    const auto t = noisy_urban(5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sdy4o_decompose(t, search));
    }
}
BENCHMARK(BM_SdY4OPixel);

static void BM_HellingerWishart(benchmark::State& state) {
    const auto a = noisy_urban(6);
    const auto b = noisy_urban(7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hellinger_wishart(a, b, LookCount(9.0)));
    }
}
BENCHMARK(BM_HellingerWishart);

static void BM_WishartSample(benchmark::State& state) {
    const auto sigma = archetype("urban");
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(wishart_sample(sigma, 9, ++seed));
    }
}
BENCHMARK(BM_WishartSample);

// One 1000-pixel raster row through the full driver.
static void BM_DecomposeRow(benchmark::State& state) {
    const auto t3 = urban_raster(1, 1000);
    DecomposeOptions opts;
    opts.method = static_cast<DecompositionMethod>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(decompose_raster(t3, opts));
    }
    state.SetItemsProcessed(state.iterations() * 1000);
    state.SetLabel(std::string(to_string(opts.method)));
}
BENCHMARK(BM_DecomposeRow)
    ->Arg(static_cast<int>(DecompositionMethod::Y4O))
    ->Arg(static_cast<int>(DecompositionMethod::Y4R))
    ->Arg(static_cast<int>(DecompositionMethod::SdY4O))
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
