#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "wtraj/model.hpp"

namespace wtraj {

enum class InputFormat { Csv, Json };

std::string_view to_string(InputFormat format);
std::optional<InputFormat> parse_input_format(std::string_view text);

/// Column order of the observation CSV. A trailing phone_model column is optional.
inline constexpr std::string_view kObservationCsvHeader =
    "device_id,observation_id,beacon_id,beacon_kind,region_id,location,entry_ms,exit_ms";

struct RejectedRow {
    /// CSV: physical line number. JSON: zero-based array index.
    std::size_t record = 0;
    std::string reason;
    std::string raw;

    bool operator==(const RejectedRow&) const = default;
};

struct IngestResult {
    ObservationsByDevice devices;
    std::vector<RejectedRow> rejects;

    std::size_t observation_count() const;
};

/// Malformed rows are collected with one of: wrong_field_count,
/// missing_device_id, bad_beacon_kind, bad_entry_ms, bad_exit_ms,
/// entry_after_exit, empty_location. Rows before the earliest valid timestamp
/// are kept; the trajectory filter handles them. A missing or wrong header
/// throws std::invalid_argument; an empty input yields no observations.
IngestResult ingest_csv(std::istream& in);

/// A JSON array of objects with the CSV column names as keys.
IngestResult ingest_json(std::string_view text);

/// Throws std::runtime_error when the file cannot be read.
IngestResult ingest(const std::filesystem::path& path, InputFormat format);

/// Header plus one row per observation, devices in key order.
void write_observations_csv(std::ostream& out, const ObservationsByDevice& devices);
void write_observations_json(std::ostream& out, const ObservationsByDevice& devices);
void write_rejects_csv(std::ostream& out, const std::vector<RejectedRow>& rejects);

/// 64-bit FNV-1a of the file contents, as 16 lowercase hex digits.
std::string file_fingerprint(const std::filesystem::path& path);

}  // namespace wtraj
