#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "wtraj/model.hpp"

namespace wtraj {

/// An IANA time zone read from a compiled zoneinfo (TZif) file.
///
/// Only the UTC offset is needed here, so abbreviations and leap seconds are
/// ignored. Instants after the last explicit transition follow the POSIX TZ
/// rule stored in the file footer.
class TimeZone {
public:
    /// Copies share the parsed rules.
    TimeZone();

    static TimeZone utc();
    static TimeZone fixed(std::string name, DurationMs offset);

    /// Throws std::runtime_error when the zone cannot be found or parsed.
    static TimeZone load(const std::string& name);
    static TimeZone load(const std::string& name, const std::filesystem::path& zoneinfo_root);

    /// $TZDIR when set, otherwise /usr/share/zoneinfo.
    static std::filesystem::path default_zoneinfo_root();

    const std::string& name() const;

    DurationMs utc_offset(TimestampMs t) const;
    TimestampMs to_local(TimestampMs t) const { return t + utc_offset(t); }

    /// Local wall-clock hour in [0, 23].
    int local_hour(TimestampMs t) const;

    /// Converts a local wall-clock instant (milliseconds on the local
    /// timeline) to UTC. Inside a spring-forward gap the pre-transition offset
    /// is used; inside a fall-back overlap the earlier instant is returned.
    TimestampMs from_local(TimestampMs local) const;

    struct Rules;

private:
    explicit TimeZone(std::shared_ptr<const Rules> rules);
    std::shared_ptr<const Rules> rules_;
};

/// Floor division for the hour/day bucketing of possibly negative instants.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    const auto q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

}  // namespace wtraj
