#include "wtraj/ingest.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json_codec.hpp"
#include "wtraj/csv.hpp"

namespace wtraj {

std::string_view to_string(InputFormat format) { return format == InputFormat::Csv ? "csv" : "json"; }

std::optional<InputFormat> parse_input_format(std::string_view text) {
    if (text == "csv") return InputFormat::Csv;
    if (text == "json") return InputFormat::Json;
    return std::nullopt;
}

std::size_t IngestResult::observation_count() const {
    std::size_t n = 0;
    for (const auto& [_, obs] : devices) n += obs.size();
    return n;
}

namespace {

std::optional<TimestampMs> parse_ms(std::string_view text) {
    TimestampMs v = 0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end || text.empty()) return std::nullopt;
    return v;
}

const std::vector<std::string>& header_columns() {
    static const std::vector<std::string> cols = [] {
        std::vector<std::string> out;
        std::string field;
        std::istringstream s{std::string(kObservationCsvHeader)};
        while (std::getline(s, field, ',')) out.push_back(field);
        return out;
    }();
    return cols;
}

std::string join_raw(const std::vector<std::string>& fields) {
    std::ostringstream s;
    write_csv_row(s, fields);
    auto out = s.str();
    out.pop_back();
    return out;
}

/// Returns the reject reason, or empty on success.
std::string build_observation(const std::vector<std::string>& f, WirelessObservation& obs) {
    obs.device_id = f[0];
    obs.observation_id = f[1];
    obs.beacon_id = f[2];
    obs.region_id = f[4];
    obs.location = f[5];
    if (obs.device_id.empty()) return "missing_device_id";
    const auto kind = parse_beacon_kind(f[3]);
    if (!kind) return "bad_beacon_kind";
    obs.beacon_kind = *kind;
    const auto entry = parse_ms(f[6]);
    if (!entry) return "bad_entry_ms";
    const auto exit = parse_ms(f[7]);
    if (!exit) return "bad_exit_ms";
    obs.entry_time = *entry;
    obs.exit_time = *exit;
    if (obs.entry_time > obs.exit_time) return "entry_after_exit";
    if (obs.location.empty()) return "empty_location";
    if (f.size() > 8) obs.phone_model = f[8];
    return {};
}

}  // namespace

IngestResult ingest_csv(std::istream& in) {
    IngestResult result;
    CsvReader reader(in);
    std::vector<std::string> fields;
    if (!reader.next(fields)) return result;

    auto expected = header_columns();
    bool with_phone = false;
    if (fields.size() == expected.size() + 1 && fields.back() == "phone_model") {
        with_phone = true;
        expected.push_back("phone_model");
    }
    if (fields != expected) throw std::invalid_argument("unexpected CSV header: " + join_raw(fields));

    while (reader.next(fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
        if (fields.size() != expected.size()) {
            result.rejects.push_back({reader.line(), "wrong_field_count", join_raw(fields)});
            continue;
        }
        WirelessObservation obs;
        auto reason = build_observation(fields, obs);
        if (!reason.empty()) {
            result.rejects.push_back({reader.line(), std::move(reason), join_raw(fields)});
            continue;
        }
        if (!with_phone) obs.phone_model.clear();
        result.devices[obs.device_id].push_back(std::move(obs));
    }
    return result;
}

IngestResult ingest_json(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::exception& e) {
        throw std::invalid_argument(std::string("input is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw std::invalid_argument("JSON input must be an array of observations");

    IngestResult result;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& row = doc[i];
        std::vector<std::string> fields;
        std::string reason;
        if (!row.is_object()) {
            reason = "wrong_field_count";
        } else {
            for (const auto& col : header_columns()) {
                if (!row.contains(col)) {
                    reason = "wrong_field_count";
                    break;
                }
                const auto& v = row.at(col);
                fields.push_back(v.is_string() ? v.get<std::string>() : v.dump());
            }
            if (reason.empty() && row.contains("phone_model")) {
                const auto& v = row.at("phone_model");
                fields.push_back(v.is_string() ? v.get<std::string>() : v.dump());
            }
        }
        WirelessObservation obs;
        if (reason.empty()) reason = build_observation(fields, obs);
        if (!reason.empty()) {
            result.rejects.push_back({i, std::move(reason), row.dump()});
            continue;
        }
        result.devices[obs.device_id].push_back(std::move(obs));
    }
    return result;
}

IngestResult ingest(const std::filesystem::path& path, InputFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read input file: " + path.string());
    if (format == InputFormat::Csv) return ingest_csv(in);
    std::ostringstream text;
    text << in.rdbuf();
    return ingest_json(text.str());
}

void write_observations_csv(std::ostream& out, const ObservationsByDevice& devices) {
    bool with_phone = false;
    for (const auto& [_, observations] : devices) {
        for (const auto& o : observations) with_phone = with_phone || !o.phone_model.empty();
    }
    out << kObservationCsvHeader << (with_phone ? ",phone_model\n" : "\n");
    for (const auto& [_, observations] : devices) {
        for (const auto& o : observations) {
            std::vector<std::string> row{o.device_id,   o.observation_id, o.beacon_id,
                                         std::string(to_string(o.beacon_kind)),
                                         o.region_id,   o.location,       std::to_string(o.entry_time),
                                         std::to_string(o.exit_time)};
            if (with_phone) row.push_back(o.phone_model);
            write_csv_row(out, row);
        }
    }
}

void write_observations_json(std::ostream& out, const ObservationsByDevice& devices) {
    Json arr = Json::array();
    for (const auto& [_, observations] : devices) {
        for (const auto& o : observations) {
            auto j = encode(o);
            if (o.phone_model.empty()) j.erase("phone_model");
            arr.push_back(std::move(j));
        }
    }
    out << dump_document(arr);
}

void write_rejects_csv(std::ostream& out, const std::vector<RejectedRow>& rejects) {
    out << "record,reason,raw\n";
    for (const auto& r : rejects) write_csv_row(out, {std::to_string(r.record), r.reason, r.raw});
}

std::string file_fingerprint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path.string());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

}  // namespace wtraj
