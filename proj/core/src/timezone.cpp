#include "wtraj/timezone.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <vector>

namespace wtraj {

namespace {

// One POSIX "Mm.w.d/time" transition.
struct PosixDate {
    int month = 1;
    int week = 1;  // 5 means last
    int weekday = 0;  // 0 = Sunday
    std::int64_t seconds_of_day = 2 * 3600;
};

struct PosixRule {
    std::int64_t std_offset = 0;  // seconds east of UTC
    std::optional<std::int64_t> dst_offset;
    PosixDate dst_start;
    PosixDate dst_end;
};

class PosixParser {
public:
    explicit PosixParser(std::string_view s) : s_(s) {}

    PosixRule parse() {
        PosixRule rule;
        skip_name();
        rule.std_offset = -parse_offset();
        if (done()) return rule;
        skip_name();
        if (!done() && peek() != ',') {
            rule.dst_offset = -parse_offset();
        } else {
            rule.dst_offset = rule.std_offset + 3600;
        }
        if (done()) {
            // DST named without transition rules: treat as standard time.
            rule.dst_offset.reset();
            return rule;
        }
        expect(',');
        rule.dst_start = parse_date();
        expect(',');
        rule.dst_end = parse_date();
        return rule;
    }

private:
    bool done() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }

    void expect(char c) {
        if (done() || s_[pos_] != c) fail();
        ++pos_;
    }

    [[noreturn]] void fail() const {
        throw std::runtime_error("unsupported POSIX TZ rule: " + std::string(s_));
    }

    void skip_name() {
        if (!done() && peek() == '<') {
            while (!done() && peek() != '>') ++pos_;
            expect('>');
            return;
        }
        const auto start = pos_;
        while (!done() && std::isalpha(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ - start < 3) fail();
    }

    std::int64_t parse_number() {
        const auto start = pos_;
        std::int64_t v = 0;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            ++pos_;
        }
        if (pos_ == start) fail();
        return v;
    }

    // [+-]hh[:mm[:ss]] in seconds.
    std::int64_t parse_offset() {
        std::int64_t sign = 1;
        if (!done() && (peek() == '+' || peek() == '-')) {
            sign = peek() == '-' ? -1 : 1;
            ++pos_;
        }
        std::int64_t secs = parse_number() * 3600;
        if (!done() && peek() == ':') {
            ++pos_;
            secs += parse_number() * 60;
            if (!done() && peek() == ':') {
                ++pos_;
                secs += parse_number();
            }
        }
        return sign * secs;
    }

    PosixDate parse_date() {
        PosixDate d;
        expect('M');
        d.month = static_cast<int>(parse_number());
        expect('.');
        d.week = static_cast<int>(parse_number());
        expect('.');
        d.weekday = static_cast<int>(parse_number());
        if (d.month < 1 || d.month > 12 || d.week < 1 || d.week > 5 || d.weekday > 6) fail();
        if (!done() && peek() == '/') {
            ++pos_;
            d.seconds_of_day = parse_offset();
        }
        return d;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

// Seconds since epoch of the local wall-clock moment the rule fires in `year`.
std::int64_t rule_local_seconds(const PosixDate& d, int year) {
    using namespace std::chrono;
    const sys_days first{std::chrono::year{year} / std::chrono::month{static_cast<unsigned>(d.month)} / 1};
    const auto first_wd = static_cast<int>(weekday{first}.c_encoding());
    int day = 1 + (d.weekday - first_wd + 7) % 7 + (d.week - 1) * 7;
    const auto month_len = static_cast<int>(
        static_cast<unsigned>((std::chrono::year{year} / std::chrono::month{static_cast<unsigned>(d.month)} / last).day()));
    while (day > month_len) day -= 7;
    const auto days = (first + std::chrono::days{day - 1}).time_since_epoch().count();
    return static_cast<std::int64_t>(days) * 86400 + d.seconds_of_day;
}

int civil_year(std::int64_t seconds) {
    using namespace std::chrono;
    const sys_days day{std::chrono::days{floor_div(seconds, 86400)}};
    return static_cast<int>(year_month_day{day}.year());
}

std::int64_t posix_offset(const PosixRule& r, std::int64_t utc_seconds) {
    if (!r.dst_offset) return r.std_offset;
    const int year = civil_year(utc_seconds + r.std_offset);
    const auto start = rule_local_seconds(r.dst_start, year) - r.std_offset;
    const auto end = rule_local_seconds(r.dst_end, year) - *r.dst_offset;
    const bool in_dst = start < end ? (utc_seconds >= start && utc_seconds < end)
                                    : !(utc_seconds >= end && utc_seconds < start);
    return in_dst ? *r.dst_offset : r.std_offset;
}

std::int64_t read_be(const unsigned char* p, int bytes) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v = (v << 8) | p[i];
    if (bytes == 4) return static_cast<std::int32_t>(static_cast<std::uint32_t>(v));
    return static_cast<std::int64_t>(v);
}

}  // namespace

struct TimeZone::Rules {
    std::string name;
    std::vector<std::int64_t> transitions;  // seconds, ascending
    std::vector<std::int64_t> offsets_after;  // offset in force from transitions[i]
    std::int64_t initial_offset = 0;
    std::optional<PosixRule> footer;

    std::int64_t offset_seconds(std::int64_t t) const {
        if (transitions.empty() || t < transitions.front()) {
            if (transitions.empty() && footer) return posix_offset(*footer, t);
            return initial_offset;
        }
        if (footer && t >= transitions.back()) return posix_offset(*footer, t);
        const auto it = std::upper_bound(transitions.begin(), transitions.end(), t);
        return offsets_after[static_cast<std::size_t>(std::distance(transitions.begin(), it)) - 1];
    }
};

namespace {

std::shared_ptr<TimeZone::Rules> parse_tzif(const std::string& name, const std::vector<unsigned char>& data) {
    auto fail = [&](const char* what) -> std::runtime_error {
        return std::runtime_error("time zone " + name + ": " + what);
    };
    constexpr std::size_t kHeader = 44;
    if (data.size() < kHeader || data[0] != 'T' || data[1] != 'Z' || data[2] != 'i' || data[3] != 'f') {
        throw fail("not a TZif file");
    }
    struct Counts {
        std::size_t isut, isstd, leap, time, type, chars;
    };
    auto counts_at = [&](std::size_t off) {
        if (off + kHeader > data.size()) throw fail("truncated header");
        const auto* p = data.data() + off + 20;
        return Counts{static_cast<std::size_t>(read_be(p, 4)),      static_cast<std::size_t>(read_be(p + 4, 4)),
                      static_cast<std::size_t>(read_be(p + 8, 4)),  static_cast<std::size_t>(read_be(p + 12, 4)),
                      static_cast<std::size_t>(read_be(p + 16, 4)), static_cast<std::size_t>(read_be(p + 20, 4))};
    };

    const char version = static_cast<char>(data[4]);
    std::size_t off = 0;
    int time_bytes = 4;
    Counts c = counts_at(0);
    if (version >= '2') {
        const std::size_t v1_len = c.time * 5 + c.type * 6 + c.chars + c.leap * 8 + c.isstd + c.isut;
        off = kHeader + v1_len;
        c = counts_at(off);
        time_bytes = 8;
    }
    std::size_t p = off + kHeader;
    const std::size_t body = c.time * (time_bytes + 1) + c.type * 6 + c.chars +
                             c.leap * (time_bytes + 4) + c.isstd + c.isut;
    if (p + body > data.size() || c.type == 0) throw fail("truncated body");

    auto rules = std::make_shared<TimeZone::Rules>();
    rules->name = name;
    std::vector<std::int64_t> times(c.time);
    for (std::size_t i = 0; i < c.time; ++i, p += time_bytes) times[i] = read_be(&data[p], time_bytes);
    std::vector<std::size_t> idx(c.time);
    for (std::size_t i = 0; i < c.time; ++i, ++p) idx[i] = data[p];
    std::vector<std::int64_t> type_offsets(c.type);
    std::vector<bool> type_dst(c.type);
    for (std::size_t i = 0; i < c.type; ++i, p += 6) {
        type_offsets[i] = read_be(&data[p], 4);
        type_dst[i] = data[p + 4] != 0;
    }
    p += c.chars + c.leap * (time_bytes + 4) + c.isstd + c.isut;

    for (std::size_t i = 0; i < c.time; ++i) {
        if (idx[i] >= c.type) throw fail("bad type index");
        rules->transitions.push_back(times[i]);
        rules->offsets_after.push_back(type_offsets[idx[i]]);
    }
    rules->initial_offset = type_offsets[0];
    for (std::size_t i = 0; i < c.type; ++i) {
        if (!type_dst[i]) {
            rules->initial_offset = type_offsets[i];
            break;
        }
    }

    if (time_bytes == 8 && p < data.size() && data[p] == '\n') {
        const auto end = std::find(data.begin() + static_cast<std::ptrdiff_t>(p) + 1, data.end(), '\n');
        const std::string footer(data.begin() + static_cast<std::ptrdiff_t>(p) + 1, end);
        if (!footer.empty()) rules->footer = PosixParser(footer).parse();
    }
    return rules;
}

}  // namespace

TimeZone::TimeZone() : TimeZone(utc()) {}

TimeZone::TimeZone(std::shared_ptr<const Rules> rules) : rules_(std::move(rules)) {}

TimeZone TimeZone::utc() {
    static const auto rules = [] {
        auto r = std::make_shared<Rules>();
        r->name = "UTC";
        return r;
    }();
    return TimeZone(rules);
}

TimeZone TimeZone::fixed(std::string name, DurationMs offset) {
    auto r = std::make_shared<Rules>();
    r->name = std::move(name);
    r->initial_offset = offset / kMsPerSecond;
    return TimeZone(std::move(r));
}

std::filesystem::path TimeZone::default_zoneinfo_root() {
    if (const char* dir = std::getenv("TZDIR"); dir != nullptr && *dir != '\0') return dir;
    return "/usr/share/zoneinfo";
}

TimeZone TimeZone::load(const std::string& name) { return load(name, default_zoneinfo_root()); }

TimeZone TimeZone::load(const std::string& name, const std::filesystem::path& zoneinfo_root) {
    if (name == "UTC" || name == "Etc/UTC") return utc();
    if (name.empty() || name.front() == '/' || name.find("..") != std::string::npos) {
        throw std::runtime_error("invalid time zone name: '" + name + "'");
    }
    std::ifstream in(zoneinfo_root / name, std::ios::binary);
    if (!in) throw std::runtime_error("unknown time zone: " + name);
    std::vector<unsigned char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return TimeZone(parse_tzif(name, data));
}

const std::string& TimeZone::name() const { return rules_->name; }

DurationMs TimeZone::utc_offset(TimestampMs t) const {
    return rules_->offset_seconds(floor_div(t, kMsPerSecond)) * kMsPerSecond;
}

int TimeZone::local_hour(TimestampMs t) const {
    const auto local = to_local(t);
    return static_cast<int>(floor_div(local - floor_div(local, kMsPerDay) * kMsPerDay, kMsPerHour));
}

TimestampMs TimeZone::from_local(TimestampMs local) const {
    // Try the offsets in force just before and after; prefer the earlier valid instant.
    const auto before = utc_offset(local - kMsPerDay);
    const auto after = utc_offset(local + kMsPerDay);
    const TimestampMs first = local - std::max(before, after);
    const TimestampMs second = local - std::min(before, after);
    for (const auto candidate : {first, second}) {
        if (to_local(candidate) == local) return candidate;
    }
    return local - before;
}

}  // namespace wtraj
