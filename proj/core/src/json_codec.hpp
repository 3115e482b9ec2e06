#pragma once

// nlohmann::json adapters shared by the serialization, config and pipeline
// sources. Not installed.

#include <json.hpp>

#include "wtraj/features.hpp"
#include "wtraj/model.hpp"
#include "wtraj/synthgen.hpp"

namespace wtraj {

struct ConsumerReport;

using Json = nlohmann::json;

Json encode(const WirelessObservation& v);
Json encode(const TrajectoryEvent& v);
Json encode(const Journey& v);
Json encode(const OfflineRestLocation& v);
Json encode(const LocationLabels& v);
Json encode(const FeatureVector& v);
Json encode(const ConsumerProfile& v);
Json encode(const ScalerParams& v);
Json encode(const AgentTruth& v);
Json encode(const GroundTruthManifest& v);

void decode(const Json& j, WirelessObservation& v);
void decode(const Json& j, TrajectoryEvent& v);
void decode(const Json& j, Journey& v);
void decode(const Json& j, OfflineRestLocation& v);
void decode(const Json& j, LocationLabels& v);
void decode(const Json& j, FeatureVector& v);
void decode(const Json& j, ConsumerProfile& v);
void decode(const Json& j, ScalerParams& v);
void decode(const Json& j, AgentTruth& v);
void decode(const Json& j, GroundTruthManifest& v);

/// device_id, home, work, orls with durations in hours (2 decimals),
/// journey_string and the condensed journey list.
Json encode_report(const ConsumerReport& report);

/// Pretty-printed with a trailing newline.
std::string dump_document(const Json& j);

}  // namespace wtraj
