#include "wtraj/report.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json_codec.hpp"
#include "wtraj/csv.hpp"

namespace wtraj {

namespace {

double hours_2dp(DurationMs ms) {
    return std::round(static_cast<double>(ms) / static_cast<double>(kMsPerHour) * 100.0) / 100.0;
}

std::string join_route(const std::vector<std::string>& route) {
    std::string out;
    for (std::size_t i = 0; i < route.size(); ++i) {
        if (i > 0) out += " → ";
        out += route[i];
    }
    return out;
}

}  // namespace

Json encode_report(const ConsumerReport& report) {
    const auto& p = report.profile;
    Json orls = Json::array();
    for (const auto& o : p.orls) {
        std::vector<double> hours;
        for (auto d : o.rest_durations) hours.push_back(hours_2dp(d));
        orls.push_back({{"location", o.location}, {"durations_hours", hours}});
    }
    Json condensed = Json::array();
    for (const auto& c : report.condensed) {
        condensed.push_back({{"route", c.route}, {"am", c.am_count}, {"pm", c.pm_count}});
    }
    return {{"device_id", p.device_id},
            {"home", p.labels.home ? Json(*p.labels.home) : Json(nullptr)},
            {"work", p.labels.work ? Json(*p.labels.work) : Json(nullptr)},
            {"orls", std::move(orls)},
            {"journey_string", report.journey_string},
            {"condensed", std::move(condensed)}};
}

std::string format_condensed_entry(const CondensedJourneyEntry& entry) {
    return join_route(entry.route) + "  AM (" + std::to_string(entry.am_count) + "), PM (" +
           std::to_string(entry.pm_count) + ")";
}

std::string render_report(const ConsumerReport& report) {
    const auto& p = report.profile;
    std::ostringstream s;
    s << "device: " << p.device_id << '\n';
    s << "home: " << p.labels.home.value_or("unlabelled") << ", work: " << p.labels.work.value_or("unlabelled")
      << '\n';
    s << "journey string: " << report.journey_string << '\n';
    s << "rest durations (hours):\n";
    if (p.orls.empty()) s << "  none\n";
    for (const auto& o : p.orls) {
        s << "  " << o.location << ':';
        for (std::size_t i = 0; i < o.rest_durations.size(); ++i) {
            s << (i == 0 ? " " : ", ") << format_trimmed(hours_2dp(o.rest_durations[i]), 2);
        }
        s << '\n';
    }
    s << "journeys:\n";
    for (const auto& c : report.condensed) s << "  " << format_condensed_entry(c) << '\n';
    return s.str();
}

std::string report_to_json(const ConsumerReport& report) { return dump_document(encode_report(report)); }

const ConsumerReport& find_consumer(std::span<const ConsumerReport> consumers, std::string_view device_id) {
    for (const auto& c : consumers) {
        if (c.profile.device_id == device_id) return c;
    }
    throw std::out_of_range("unknown device: " + std::string(device_id));
}

std::string similar_to_csv(std::span<const SimilarityHit> hits) {
    std::ostringstream s;
    s << "rank,device_id,score\n";
    for (std::size_t i = 0; i < hits.size(); ++i) {
        write_csv_row(s, {std::to_string(i + 1), hits[i].device_id, std::to_string(hits[i].score)});
    }
    return s.str();
}

}  // namespace wtraj
