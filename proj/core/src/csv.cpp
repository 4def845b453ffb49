#include "leadix/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "leadix/error.hpp"

namespace leadix::csv {

std::vector<Row> parse(std::string_view text, std::string_view source, char delimiter) {
    std::vector<Row> rows;
    std::size_t line = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();

    // Skip a UTF-8 byte order mark.
    if (text.substr(0, 3) == "\xEF\xBB\xBF") i = 3;

    while (i < n) {
        Row row;
        row.line = line;
        std::string field;
        bool record_done = false;
        while (!record_done) {
            field.clear();
            if (i < n && text[i] == '"') {
                ++i;
                bool closed = false;
                while (i < n) {
                    const char c = text[i];
                    if (c == '"') {
                        if (i + 1 < n && text[i + 1] == '"') {
                            field += '"';
                            i += 2;
                        } else {
                            ++i;
                            closed = true;
                            break;
                        }
                    } else {
                        if (c == '\n') ++line;
                        field += c;
                        ++i;
                    }
                }
                if (!closed) throw ParseError(std::string(source), row.line, "", "unterminated quoted field");
                if (i < n && text[i] != delimiter && text[i] != '\n' && text[i] != '\r') {
                    throw ParseError(std::string(source), line, "", "unexpected character after closing quote");
                }
            } else {
                while (i < n && text[i] != delimiter && text[i] != '\n' && text[i] != '\r') field += text[i++];
            }
            row.fields.push_back(field);
            if (i >= n) {
                record_done = true;
            } else if (text[i] == delimiter) {
                ++i;
            } else {
                if (text[i] == '\r') ++i;
                if (i < n && text[i] == '\n') ++i;
                ++line;
                record_done = true;
            }
        }
        const bool blank = row.fields.size() == 1 && row.fields.front().empty();
        if (!blank) rows.push_back(std::move(row));
    }
    return rows;
}

std::string escape(std::string_view field, char delimiter) {
    const bool needs_quotes = field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string join(std::span<const std::string> fields, char delimiter) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out += delimiter;
        out += escape(fields[i], delimiter);
    }
    return out;
}

std::vector<Row> parse_with_header(std::string_view text, std::string_view source,
                                   std::span<const std::string_view> header, char delimiter) {
    auto rows = parse(text, source, delimiter);
    std::string expected;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i > 0) expected += delimiter;
        expected += header[i];
    }
    if (rows.empty()) throw ParseError(std::string(source), 1, "", "missing header; expected '" + expected + "'");
    const auto& got = rows.front().fields;
    bool same = got.size() == header.size();
    for (std::size_t i = 0; same && i < header.size(); ++i) same = got[i] == header[i];
    if (!same) throw ParseError(std::string(source), rows.front().line, "", "bad header; expected '" + expected + "'");
    rows.erase(rows.begin());
    for (const auto& r : rows) {
        if (r.fields.size() != header.size()) {
            throw ParseError(std::string(source), r.line, "",
                             "expected " + std::to_string(header.size()) + " columns, found " +
                                 std::to_string(r.fields.size()));
        }
    }
    return rows;
}

long long parse_int(const Row& row, std::size_t col, std::string_view name, std::string_view source) {
    const auto& s = row.fields.at(col);
    long long v = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (s.empty() || ec != std::errc() || ptr != last) {
        throw ParseError(std::string(source), row.line, std::string(name), "not an integer: '" + s + "'");
    }
    return v;
}

std::optional<long long> parse_optional_int(const Row& row, std::size_t col, std::string_view name,
                                            std::string_view source) {
    if (row.fields.at(col).empty()) return std::nullopt;
    return parse_int(row, col, name, source);
}

double parse_double(const Row& row, std::size_t col, std::string_view name, std::string_view source) {
    const auto& s = row.fields.at(col);
    double v = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (s.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw ParseError(std::string(source), row.line, std::string(name), "not a finite number: '" + s + "'");
    }
    return v;
}

std::optional<double> parse_optional_double(const Row& row, std::size_t col, std::string_view name,
                                            std::string_view source) {
    if (row.fields.at(col).empty()) return std::nullopt;
    return parse_double(row, col, name, source);
}

bool parse_bool(const Row& row, std::size_t col, std::string_view name, std::string_view source) {
    const auto& s = row.fields.at(col);
    if (s == "true") return true;
    if (s == "false") return false;
    throw ParseError(std::string(source), row.line, std::string(name), "expected true or false, found '" + s + "'");
}

std::string format_exact(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string format_sig6(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace leadix::csv
