#include <benchmark/benchmark.h>

#include <random>

#include "wtraj/metric.hpp"

namespace {

std::vector<wtraj::ConsumerProfile> population(std::size_t n) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> count(1, 40);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    static const char* kPatterns[] = {"HW", "WH", "HUW", "WUH", "H", "W", "HOW", "U", "UU"};
    std::vector<wtraj::ConsumerProfile> pop(n);
    for (auto& p : pop) {
        for (int k = 0; k < 4; ++k) p.pattern_counts[kPatterns[rng() % 9]] += count(rng);
        p.features = {unit(rng), unit(rng), unit(rng), unit(rng)};
    }
    return pop;
}

wtraj::ScalerParams unit_scaler() {
    wtraj::ScalerParams s;
    s.max.fill(1.0);
    return s;
}

void BM_CompositeDistance(benchmark::State& state) {
    const auto pop = population(256);
    const auto scaler = unit_scaler();
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(wtraj::composite_distance(pop[i % 256], pop[(i * 7 + 3) % 256], scaler));
        ++i;
    }
}
BENCHMARK(BM_CompositeDistance);

void BM_CompositeMetric(benchmark::State& state) {
    const auto pop = population(256);
    const wtraj::CompositeMetric metric(pop, unit_scaler());
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(metric(i % 256, (i * 7 + 3) % 256));
        ++i;
    }
}
BENCHMARK(BM_CompositeMetric);

}  // namespace

BENCHMARK_MAIN();
