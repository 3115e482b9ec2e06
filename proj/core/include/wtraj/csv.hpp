#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace wtraj {

/// RFC 4180 style reader: comma separated, double-quoted fields may contain
/// commas, quotes ("") and line breaks. CRLF and LF line endings are accepted.
class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    /// Reads the next record. Returns false at end of input.
    /// Throws std::runtime_error on an unterminated quoted field.
    bool next(std::vector<std::string>& fields);

    /// Physical line on which the last record returned by next() started.
    std::size_t line() const { return record_line_; }

private:
    std::istream& in_;
    std::size_t line_ = 1;
    std::size_t record_line_ = 0;
};

/// Quotes the field when it contains a comma, quote, or line break.
std::string csv_escape(std::string_view field);

/// Writes one record followed by '\n'.
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Fixed-point text with `decimals` places, trailing zeros (and a trailing
/// point) removed.
std::string format_trimmed(double value, int decimals);

}  // namespace wtraj
