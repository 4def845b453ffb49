#pragma once

// Minimal delimited-text support: RFC 4180 quoting, strict field parsing and
// the two number formats used on disk (shortest round-trip for data files,
// six significant digits for reports).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace leadix::csv {

struct Row {
    std::size_t line = 0;  // 1-based physical line where the record starts
    std::vector<std::string> fields;
};

/// Splits text into records. Quoted fields may hold delimiters, doubled quotes
/// and line breaks. Blank lines are skipped. Throws ParseError on an
/// unterminated quote or stray characters after a closing quote.
std::vector<Row> parse(std::string_view text, std::string_view source, char delimiter = ',');

/// Quotes a field when it contains the delimiter, a quote or a line break.
std::string escape(std::string_view field, char delimiter = ',');

std::string join(std::span<const std::string> fields, char delimiter = ',');

/// Parses records and checks that the first one equals `header` exactly.
/// Every following row must have the header's column count.
std::vector<Row> parse_with_header(std::string_view text, std::string_view source,
                                   std::span<const std::string_view> header, char delimiter = ',');

long long parse_int(const Row& row, std::size_t col, std::string_view name, std::string_view source);
std::optional<long long> parse_optional_int(const Row& row, std::size_t col, std::string_view name,
                                            std::string_view source);
/// Finite doubles only.
double parse_double(const Row& row, std::size_t col, std::string_view name, std::string_view source);
std::optional<double> parse_optional_double(const Row& row, std::size_t col, std::string_view name,
                                            std::string_view source);
/// "true" or "false".
bool parse_bool(const Row& row, std::size_t col, std::string_view name, std::string_view source);

/// Shortest text that reads back to the same double.
std::string format_exact(double v);

/// Six significant digits ("%.6g").
std::string format_sig6(double v);

std::string read_file(const std::filesystem::path& path);

/// Writes the whole content in binary mode.
/// Throws leadix::Error when the file cannot be written.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace leadix::csv
