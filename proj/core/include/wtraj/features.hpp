#pragma once

#include <array>
#include <span>

#include "wtraj/model.hpp"

namespace wtraj {

/// Computes the four numeric features from a profile's journeys and ORLs.
///
/// A single-event journey has zero duration. Frequency is journeys per day of
/// trajectory span (first to last event); a zero span yields zero. The ORL
/// divisor is floored at one.
FeatureVector compute_features(std::span<const Journey> journeys, std::size_t orl_count);
FeatureVector compute_features(const ConsumerProfile& profile);

/// Per-feature population range.
struct ScalerParams {
    std::array<double, FeatureVector::kSize> min{};
    std::array<double, FeatureVector::kSize> max{};

    bool operator==(const ScalerParams&) const = default;
};

/// Throws std::invalid_argument for an empty population or non-finite values.
ScalerParams fit_scaler(std::span<const FeatureVector> population);

/// Min-max scaling into [0, 1], clamped; a degenerate range maps to 0.
FeatureVector scale(const FeatureVector& v, const ScalerParams& params);

}  // namespace wtraj
