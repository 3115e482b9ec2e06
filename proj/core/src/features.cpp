#include "wtraj/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wtraj {

FeatureVector compute_features(std::span<const Journey> journeys, std::size_t orl_count) {
    FeatureVector f;
    if (journeys.empty()) return f;

    const auto n = static_cast<double>(journeys.size());
    double total_duration = 0.0;
    double total_locations = 0.0;
    TimestampMs first = journeys.front().start_time();
    TimestampMs last = journeys.front().end_time();
    for (const auto& j : journeys) {
        total_duration += static_cast<double>(j.duration());
        total_locations += static_cast<double>(j.location_sequence().size());
        first = std::min(first, j.start_time());
        last = std::max(last, j.end_time());
    }
    const double span_days = static_cast<double>(last - first) / static_cast<double>(kMsPerDay);

    f.avg_journey_duration = total_duration / n;
    f.locations_per_journey = total_locations / n;
    f.journey_frequency = span_days > 0.0 ? n / span_days : 0.0;
    f.journeys_per_orl = n / static_cast<double>(std::max<std::size_t>(1, orl_count));
    return f;
}

FeatureVector compute_features(const ConsumerProfile& profile) {
    return compute_features(profile.journeys, profile.orls.size());
}

ScalerParams fit_scaler(std::span<const FeatureVector> population) {
    if (population.empty()) throw std::invalid_argument("cannot fit a scaler on an empty population");
    ScalerParams p;
    p.min = population.front().values();
    p.max = p.min;
    for (const auto& v : population) {
        const auto vals = v.values();
        for (std::size_t k = 0; k < FeatureVector::kSize; ++k) {
            if (!std::isfinite(vals[k])) throw std::invalid_argument("feature values must be finite");
            p.min[k] = std::min(p.min[k], vals[k]);
            p.max[k] = std::max(p.max[k], vals[k]);
        }
    }
    return p;
}

FeatureVector scale(const FeatureVector& v, const ScalerParams& params) {
    auto vals = v.values();
    for (std::size_t k = 0; k < FeatureVector::kSize; ++k) {
        const double range = params.max[k] - params.min[k];
        vals[k] = range > 0.0 ? std::clamp((vals[k] - params.min[k]) / range, 0.0, 1.0) : 0.0;
    }
    return FeatureVector::from_values(vals);
}

}  // namespace wtraj
