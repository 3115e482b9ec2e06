#include <benchmark/benchmark.h>

#include <array>
#include <cmath>
#include <random>

#include "wtraj/cluster.hpp"

namespace {

std::vector<std::array<double, 2>> points(std::size_t n) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> jitter(0.0, 0.03);
    std::vector<std::array<double, 2>> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double c = static_cast<double>(i % 3) * 0.3;
        pts[i] = {c + jitter(rng), c + jitter(rng)};
    }
    return pts;
}

void run(benchmark::State& state, std::size_t budget) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto pts = points(n);
    const wtraj::DistanceFunction d = [&](std::size_t i, std::size_t j) {
        return std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
    };
    for (auto _ : state) benchmark::DoNotOptimize(wtraj::dbscan(n, d, {0.04, 10}, {budget}));
    state.SetComplexityN(state.range(0));
}

void BM_Dbscan(benchmark::State& state) { run(state, 0); }
void BM_DbscanCached(benchmark::State& state) { run(state, std::size_t{1} << 30); }

BENCHMARK(BM_Dbscan)->RangeMultiplier(2)->Range(256, 4096)->Complexity();
BENCHMARK(BM_DbscanCached)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

}  // namespace

BENCHMARK_MAIN();
