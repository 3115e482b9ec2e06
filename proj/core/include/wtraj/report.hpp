#pragma once

#include <span>
#include <string>
#include <string_view>

#include "wtraj/pipeline.hpp"
#include "wtraj/routesim.hpp"

namespace wtraj {

/// Condensed journey line, e.g. "A → B  AM (2), PM (0)".
std::string format_condensed_entry(const CondensedJourneyEntry& entry);

/// Plain-text summary of one consumer: labels, journey string, ORL rest
/// durations in hours, and the condensed journey list.
std::string render_report(const ConsumerReport& report);

/// The per-consumer JSON object written to consumers.json.
std::string report_to_json(const ConsumerReport& report);

/// Looks up a consumer by device id. Throws std::out_of_range when absent.
const ConsumerReport& find_consumer(std::span<const ConsumerReport> consumers, std::string_view device_id);

/// "rank,device_id,score" header plus one row per hit, rank from 1.
std::string similar_to_csv(std::span<const SimilarityHit> hits);

}  // namespace wtraj
