#include <benchmark/benchmark.h>

#include <random>

#include "wtraj/routesim.hpp"

namespace {

std::vector<std::string> sequence(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::string> s(n);
    for (auto& x : s) x = "S" + std::to_string(rng() % 50);
    return s;
}

void BM_LcsLength(benchmark::State& state) {
    std::mt19937_64 rng(3);
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = sequence(rng, n);
    const auto b = sequence(rng, n);
    for (auto _ : state) benchmark::DoNotOptimize(wtraj::lcs_length(a, b));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LcsLength)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_MatcherReuse(benchmark::State& state) {
    std::mt19937_64 rng(4);
    const auto target = sequence(rng, 300);
    const wtraj::SubstringMatcher matcher(target);
    const auto other = sequence(rng, 300);
    for (auto _ : state) benchmark::DoNotOptimize(matcher.longest_common(other));
}
BENCHMARK(BM_MatcherReuse);

}  // namespace

BENCHMARK_MAIN();
