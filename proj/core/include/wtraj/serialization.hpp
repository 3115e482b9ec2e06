#pragma once

#include <string>
#include <string_view>

#include "wtraj/features.hpp"
#include "wtraj/model.hpp"
#include "wtraj/synthgen.hpp"

namespace wtraj {

/// JSON text for domain values. Output is deterministic: object keys are
/// sorted and doubles use the shortest round-trip form.
std::string to_json(const WirelessObservation& value);
std::string to_json(const TrajectoryEvent& value);
std::string to_json(const Journey& value);
std::string to_json(const OfflineRestLocation& value);
std::string to_json(const LocationLabels& value);
std::string to_json(const FeatureVector& value);
std::string to_json(const ConsumerProfile& value);
std::string to_json(const ScalerParams& value);
std::string to_json(const GroundTruthManifest& value);

/// Inverse of to_json. Throws std::invalid_argument on malformed input.
template <class T>
T from_json(std::string_view text);

template <> WirelessObservation from_json<WirelessObservation>(std::string_view text);
template <> TrajectoryEvent from_json<TrajectoryEvent>(std::string_view text);
template <> Journey from_json<Journey>(std::string_view text);
template <> OfflineRestLocation from_json<OfflineRestLocation>(std::string_view text);
template <> LocationLabels from_json<LocationLabels>(std::string_view text);
template <> FeatureVector from_json<FeatureVector>(std::string_view text);
template <> ConsumerProfile from_json<ConsumerProfile>(std::string_view text);
template <> ScalerParams from_json<ScalerParams>(std::string_view text);
template <> GroundTruthManifest from_json<GroundTruthManifest>(std::string_view text);

}  // namespace wtraj
