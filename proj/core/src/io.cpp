#include "leadix/io.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <set>
#include <sstream>

#include "leadix/csv.hpp"
#include "leadix/summation.hpp"

namespace leadix {

namespace {

constexpr std::array<std::string_view, 8> kPublicationHeader = {
    "paper_id", "pi_id", "year", "journal", "author_count", "credit_position", "tie_span", "is_corresponding"};
constexpr std::array<std::string_view, 3> kJournalHeader = {"journal", "year", "impact_factor"};
constexpr std::array<std::string_view, 7> kProfileHeader = {"pi_id", "country", "class", "gender",
                                                            "birth_year", "rank", "funding_year"};
constexpr std::array<std::string_view, 4> kGrantHeader = {"pi_id", "year", "amount", "currency"};
constexpr std::array<std::string_view, 4> kCitationHeader = {"journal", "year", "total_citations", "impact_factor"};
constexpr std::array<std::string_view, 2> kTableHeader = {"weight", "min_if"};
constexpr std::string_view kTableMagic = "# leadix-toughness-table v1";

int to_int(long long v, const csv::Row& row, std::string_view name, std::string_view source) {
    if (v < INT_MIN || v > INT_MAX) throw ParseError(std::string(source), row.line, std::string(name), "out of range");
    return static_cast<int>(v);
}

int int_field(const csv::Row& row, std::size_t col, std::string_view name, std::string_view source) {
    return to_int(csv::parse_int(row, col, name, source), row, name, source);
}

std::optional<int> optional_int_field(const csv::Row& row, std::size_t col, std::string_view name,
                                      std::string_view source) {
    auto v = csv::parse_optional_int(row, col, name, source);
    if (!v) return std::nullopt;
    return to_int(*v, row, name, source);
}

const std::string& text_field(const csv::Row& row, std::size_t col, std::string_view name, std::string_view source) {
    const auto& s = row.fields.at(col);
    if (s.empty()) throw ParseError(std::string(source), row.line, std::string(name), "must not be empty");
    return s;
}

template <std::size_t N>
std::string header_line(const std::array<std::string_view, N>& header) {
    std::string out;
    for (std::size_t i = 0; i < N; ++i) {
        if (i > 0) out += ',';
        out += header[i];
    }
    out += '\n';
    return out;
}

void append_row(std::string& out, std::vector<std::string> fields) {
    out += csv::join(fields);
    out += '\n';
}

template <typename T>
std::string opt_int(const std::optional<T>& v) {
    return v ? std::to_string(*v) : std::string();
}

std::string path_source(const std::filesystem::path& p) { return p.string(); }

}  // namespace

// ---------------------------------------------------------------------------

std::vector<PublicationRecord> parse_publications(std::string_view text, std::string_view source) {
    const auto rows = csv::parse_with_header(text, source, kPublicationHeader);
    std::vector<PublicationRecord> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        PublicationRecord r;
        r.paper_id = text_field(row, 0, "paper_id", source);
        r.pi_id = text_field(row, 1, "pi_id", source);
        r.year = int_field(row, 2, "year", source);
        r.journal = text_field(row, 3, "journal", source);
        r.author_count = int_field(row, 4, "author_count", source);
        if (r.author_count < 1) {
            throw ParseError(std::string(source), row.line, "author_count",
                             "must be >= 1, found " + std::to_string(r.author_count));
        }
        r.credit_position = int_field(row, 5, "credit_position", source);
        r.tie_span = optional_int_field(row, 6, "tie_span", source).value_or(1);
        r.is_corresponding = csv::parse_bool(row, 7, "is_corresponding", source);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<JournalYearIF> parse_journals(std::string_view text, std::string_view source) {
    const auto rows = csv::parse_with_header(text, source, kJournalHeader);
    std::vector<JournalYearIF> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        JournalYearIF j;
        j.journal = text_field(row, 0, "journal", source);
        j.year = int_field(row, 1, "year", source);
        j.impact_factor = csv::parse_double(row, 2, "impact_factor", source);
        if (j.impact_factor < 0.0) throw ParseError(std::string(source), row.line, "impact_factor", "must be >= 0");
        out.push_back(std::move(j));
    }
    return out;
}

std::vector<InvestigatorProfile> parse_profiles(std::string_view text, std::string_view source) {
    const auto rows = csv::parse_with_header(text, source, kProfileHeader);
    std::vector<InvestigatorProfile> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        InvestigatorProfile p;
        p.pi_id = text_field(row, 0, "pi_id", source);
        auto country = parse_country(row.fields[1]);
        if (!country) {
            throw ParseError(std::string(source), row.line, "country",
                             "expected CN, US or OTHER, found '" + row.fields[1] + "'");
        }
        p.country = *country;
        p.cohort_class = int_field(row, 2, "class", source);
        if (!row.fields[3].empty()) {
            p.gender = parse_gender(row.fields[3]);
            if (!p.gender) {
                throw ParseError(std::string(source), row.line, "gender",
                                 "expected male, female or empty, found '" + row.fields[3] + "'");
            }
        }
        p.birth_year = optional_int_field(row, 4, "birth_year", source);
        if (!row.fields[5].empty()) {
            p.rank = parse_rank(row.fields[5]);
            if (!p.rank) {
                throw ParseError(std::string(source), row.line, "rank",
                                 "expected professor, assoc_professor, assist_professor or empty, found '" +
                                     row.fields[5] + "'");
            }
        }
        p.funding_year = optional_int_field(row, 6, "funding_year", source);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<GrantRecord> parse_grants(std::string_view text, std::string_view source) {
    const auto rows = csv::parse_with_header(text, source, kGrantHeader);
    std::vector<GrantRecord> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        GrantRecord g;
        g.pi_id = text_field(row, 0, "pi_id", source);
        g.year = int_field(row, 1, "year", source);
        g.amount = csv::parse_double(row, 2, "amount", source);
        if (g.amount < 0.0) throw ParseError(std::string(source), row.line, "amount", "must be >= 0");
        g.currency = text_field(row, 3, "currency", source);
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<JournalCitations> parse_journal_citations(std::string_view text, std::string_view source) {
    const auto rows = csv::parse_with_header(text, source, kCitationHeader);
    std::vector<JournalCitations> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        JournalCitations j;
        j.journal = text_field(row, 0, "journal", source);
        j.year = int_field(row, 1, "year", source);
        j.total_citations = csv::parse_double(row, 2, "total_citations", source);
        if (j.total_citations < 0.0) throw ParseError(std::string(source), row.line, "total_citations", "must be >= 0");
        j.impact_factor = csv::parse_double(row, 3, "impact_factor", source);
        if (j.impact_factor < 0.0) throw ParseError(std::string(source), row.line, "impact_factor", "must be >= 0");
        out.push_back(std::move(j));
    }
    return out;
}

ToughnessTable parse_toughness_table(std::string_view text, std::string_view source) {
    const auto eol = text.find('\n');
    const auto first = text.substr(0, eol);
    if (first.substr(0, kTableMagic.size()) != kTableMagic) {
        throw ParseError(std::string(source), 1, "", "not a toughness table (expected '" + std::string(kTableMagic) + "')");
    }
    // Metadata: ",key=value" pairs after the magic string.
    std::map<std::string, std::string> meta;
    {
        std::string rest(first.substr(kTableMagic.size()));
        if (!rest.empty() && rest.back() == '\r') rest.pop_back();
        std::istringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw ParseError(std::string(source), 1, item, "expected key=value");
            meta[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    auto meta_int = [&](const std::string& key) {
        auto it = meta.find(key);
        if (it == meta.end()) throw ParseError(std::string(source), 1, key, "missing metadata");
        csv::Row r{1, {it->second}};
        return csv::parse_int(r, 0, key, source);
    };
    const int levels = static_cast<int>(meta_int("level_count"));
    const long long base = meta_int("base_count");
    const long long total = meta_int("total_papers");
    auto mode_it = meta.find("divisor_mode");
    if (mode_it == meta.end()) throw ParseError(std::string(source), 1, "divisor_mode", "missing metadata");
    auto mode = parse_divisor_mode(mode_it->second);
    if (!mode) throw ParseError(std::string(source), 1, "divisor_mode", "unknown mode '" + mode_it->second + "'");

    // Keep the metadata line as a blank line so reported line numbers match the file.
    const std::string body = eol == std::string_view::npos ? std::string() : "\n" + std::string(text.substr(eol + 1));
    const auto rows = csv::parse_with_header(body, source, kTableHeader);
    if (levels < 1 || rows.size() != static_cast<std::size_t>(levels)) {
        throw ParseError(std::string(source), 0, "", "expected one row per level (" + std::to_string(levels) + ")");
    }
    std::vector<double> cutoffs;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto weight = csv::parse_int(rows[k], 0, "weight", source);
        if (weight != levels - static_cast<long long>(k)) {
            throw ParseError(std::string(source), rows[k].line, "weight", "weights must run from level_count down to 1");
        }
        const double min_if = csv::parse_double(rows[k], 1, "min_if", source);
        if (weight == 1) {
            if (min_if != 0.0) throw ParseError(std::string(source), rows[k].line, "min_if", "bottom level must start at 0");
        } else {
            cutoffs.push_back(min_if);
        }
    }
    try {
        return ToughnessTable::from_cutoffs(levels, std::move(cutoffs), base, total, *mode);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string(source), 0, "min_if", e.what());
    }
}

// ---------------------------------------------------------------------------

std::string format_publications(std::span<const PublicationRecord> records) {
    std::string out = header_line(kPublicationHeader);
    for (const auto& r : records) {
        append_row(out, {r.paper_id, r.pi_id, std::to_string(r.year), r.journal, std::to_string(r.author_count),
                         std::to_string(r.credit_position), std::to_string(r.tie_span),
                         r.is_corresponding ? "true" : "false"});
    }
    return out;
}

std::string format_journals(std::span<const JournalYearIF> journals) {
    std::string out = header_line(kJournalHeader);
    for (const auto& j : journals) append_row(out, {j.journal, std::to_string(j.year), csv::format_exact(j.impact_factor)});
    return out;
}

std::string format_profiles(std::span<const InvestigatorProfile> profiles) {
    std::string out = header_line(kProfileHeader);
    for (const auto& p : profiles) {
        append_row(out, {p.pi_id, std::string(to_string(p.country)), std::to_string(p.cohort_class),
                         p.gender ? std::string(to_string(*p.gender)) : std::string(), opt_int(p.birth_year),
                         p.rank ? std::string(to_string(*p.rank)) : std::string(), opt_int(p.funding_year)});
    }
    return out;
}

std::string format_grants(std::span<const GrantRecord> grants) {
    std::string out = header_line(kGrantHeader);
    for (const auto& g : grants) {
        append_row(out, {g.pi_id, std::to_string(g.year), csv::format_exact(g.amount), g.currency});
    }
    return out;
}

std::string format_journal_citations(std::span<const JournalCitations> journals) {
    std::string out = header_line(kCitationHeader);
    for (const auto& j : journals) {
        append_row(out, {j.journal, std::to_string(j.year), csv::format_exact(j.total_citations),
                         csv::format_exact(j.impact_factor)});
    }
    return out;
}

std::string format_toughness_table(const ToughnessTable& table) {
    std::string out(kTableMagic);
    out += ",level_count=" + std::to_string(table.level_count());
    out += ",divisor_mode=" + std::string(to_string(table.divisor_mode()));
    out += ",base_count=" + std::to_string(table.base_count());
    out += ",total_papers=" + std::to_string(table.total_papers());
    out += '\n';
    out += header_line(kTableHeader);
    const auto& cutoffs = table.cutoffs();
    for (std::size_t k = 0; k < cutoffs.size(); ++k) {
        append_row(out, {std::to_string(table.level_count() - static_cast<int>(k)), csv::format_exact(cutoffs[k])});
    }
    append_row(out, {"1", "0"});
    return out;
}

// ---------------------------------------------------------------------------

std::vector<PublicationRecord> read_publications(const std::filesystem::path& path) {
    return parse_publications(csv::read_file(path), path_source(path));
}

std::vector<JournalYearIF> read_journals(const std::filesystem::path& path) {
    return parse_journals(csv::read_file(path), path_source(path));
}

std::vector<InvestigatorProfile> read_profiles(const std::filesystem::path& path) {
    return parse_profiles(csv::read_file(path), path_source(path));
}

std::vector<GrantRecord> read_grant_rows(const std::filesystem::path& path) {
    return parse_grants(csv::read_file(path), path_source(path));
}

std::vector<JournalCitations> read_journal_citations(const std::filesystem::path& path) {
    return parse_journal_citations(csv::read_file(path), path_source(path));
}

ToughnessTable read_toughness_table(const std::filesystem::path& path) {
    return parse_toughness_table(csv::read_file(path), path_source(path));
}

std::map<std::string, Funding> aggregate_grants(std::span<const GrantRecord> grants) {
    std::vector<const GrantRecord*> sorted;
    sorted.reserve(grants.size());
    for (const auto& g : grants) sorted.push_back(&g);
    std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
        return std::tie(a->pi_id, a->year, a->amount, a->currency) < std::tie(b->pi_id, b->year, b->amount, b->currency);
    });

    std::map<std::string, Funding> out;
    std::map<std::string, CompensatedSum> sums;
    for (const auto* g : sorted) {
        auto [it, inserted] = out.try_emplace(g->pi_id, Funding{0.0, g->currency});
        if (!inserted && it->second.currency != g->currency) {
            throw Error("pi '" + g->pi_id + "' has grants in both " + it->second.currency + " and " + g->currency +
                        "; currency conversion is not supported");
        }
        sums[g->pi_id].add(g->amount);
    }
    for (auto& [id, f] : out) f.amount = sums[id].value();
    return out;
}

std::map<std::string, Funding> read_grants(const std::filesystem::path& path) {
    return aggregate_grants(read_grant_rows(path));
}

std::vector<std::string> attach_funding(std::vector<InvestigatorProfile>& profiles,
                                        const std::map<std::string, Funding>& funding) {
    std::set<std::string> matched;
    for (auto& p : profiles) {
        if (auto it = funding.find(p.pi_id); it != funding.end()) {
            p.total_funding = it->second;
            matched.insert(p.pi_id);
        }
    }
    std::vector<std::string> unmatched;
    for (const auto& [id, f] : funding) {
        if (!matched.count(id)) unmatched.push_back(id);
    }
    return unmatched;
}

}  // namespace leadix
