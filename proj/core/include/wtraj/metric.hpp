#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "wtraj/features.hpp"
#include "wtraj/model.hpp"

namespace wtraj {

/// Counts of patterns used by only one side, plus half the count difference
/// of every shared pattern.
double pattern_distance_raw(const PatternCounts& a, const PatternCounts& b);

/// Raw distance divided by the combined journey count of both maps, so the
/// result lies in [0, 1]. Two empty maps are at distance 0.
double pattern_distance_scaled(const PatternCounts& a, const PatternCounts& b);

inline constexpr std::size_t kDistanceComponents = 5;
inline constexpr double kComponentWeight = 1.0 / static_cast<double>(kDistanceComponents);

/// Equal-weight mean of the scaled pattern distance and the four absolute
/// scaled feature differences (frequency, locations per journey, duration,
/// journeys per ORL).
double composite_distance(const ConsumerProfile& a, const ConsumerProfile& b, const ScalerParams& scaler);

/// Pairwise composite distance over a fixed population.
///
/// Pattern strings are interned once and features scaled once, so each call
/// is a merge over two short sorted id lists. Results equal
/// composite_distance() exactly.
class CompositeMetric {
public:
    CompositeMetric(std::span<const ConsumerProfile> population, const ScalerParams& scaler);

    std::size_t size() const { return items_.size(); }
    double operator()(std::size_t i, std::size_t j) const;

private:
    struct Item {
        std::vector<std::pair<std::uint32_t, int>> patterns;  // sorted by id
        int total = 0;
        std::array<double, FeatureVector::kSize> scaled{};
    };
    std::vector<Item> items_;
};

}  // namespace wtraj
