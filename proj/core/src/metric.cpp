#include "wtraj/metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <unordered_map>

namespace wtraj {

namespace {

int total_count(const PatternCounts& m) {
    int t = 0;
    for (const auto& [_, c] : m) t += c;
    return t;
}

// Merge over two key-sorted ranges; counts are integers so the sum is exact
// in double regardless of traversal order.
template <class It, class KeyLess>
double merge_distance(It a, It a_end, It b, It b_end, KeyLess less) {
    double d = 0.0;
    while (a != a_end && b != b_end) {
        if (less(a->first, b->first)) {
            d += a->second;
            ++a;
        } else if (less(b->first, a->first)) {
            d += b->second;
            ++b;
        } else {
            d += std::abs(a->second - b->second) / 2.0;
            ++a;
            ++b;
        }
    }
    for (; a != a_end; ++a) d += a->second;
    for (; b != b_end; ++b) d += b->second;
    return d;
}

double scaled_from_raw(double raw, int total_a, int total_b) {
    const int denom = total_a + total_b;
    return denom > 0 ? raw / denom : 0.0;
}

double combine(double pattern, const std::array<double, FeatureVector::kSize>& a,
               const std::array<double, FeatureVector::kSize>& b) {
    double sum = pattern;
    for (std::size_t k = 0; k < FeatureVector::kSize; ++k) sum += std::abs(a[k] - b[k]);
    return kComponentWeight * sum;
}

}  // namespace

double pattern_distance_raw(const PatternCounts& a, const PatternCounts& b) {
    return merge_distance(a.begin(), a.end(), b.begin(), b.end(),
                          [](const std::string& x, const std::string& y) { return x < y; });
}

double pattern_distance_scaled(const PatternCounts& a, const PatternCounts& b) {
    return scaled_from_raw(pattern_distance_raw(a, b), total_count(a), total_count(b));
}

double composite_distance(const ConsumerProfile& a, const ConsumerProfile& b, const ScalerParams& scaler) {
    return combine(pattern_distance_scaled(a.pattern_counts, b.pattern_counts),
                   scale(a.features, scaler).values(), scale(b.features, scaler).values());
}

CompositeMetric::CompositeMetric(std::span<const ConsumerProfile> population, const ScalerParams& scaler) {
    std::unordered_map<std::string, std::uint32_t> ids;
    items_.reserve(population.size());
    for (const auto& p : population) {
        Item item;
        item.patterns.reserve(p.pattern_counts.size());
        for (const auto& [pattern, count] : p.pattern_counts) {
            const auto [it, _] = ids.try_emplace(pattern, static_cast<std::uint32_t>(ids.size()));
            item.patterns.emplace_back(it->second, count);
            item.total += count;
        }
        std::sort(item.patterns.begin(), item.patterns.end());
        item.scaled = scale(p.features, scaler).values();
        items_.push_back(std::move(item));
    }
}

double CompositeMetric::operator()(std::size_t i, std::size_t j) const {
    const auto& a = items_[i];
    const auto& b = items_[j];
    const double raw = merge_distance(a.patterns.begin(), a.patterns.end(), b.patterns.begin(), b.patterns.end(),
                                      [](std::uint32_t x, std::uint32_t y) { return x < y; });
    return combine(scaled_from_raw(raw, a.total, b.total), a.scaled, b.scaled);
}

}  // namespace wtraj
