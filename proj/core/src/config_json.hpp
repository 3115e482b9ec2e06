#pragma once

#include "json_codec.hpp"
#include "wtraj/config.hpp"

namespace wtraj {

Json config_encode(const PipelineConfig& config);
/// Strict; validates the result.
PipelineConfig config_decode(const Json& j);

}  // namespace wtraj
