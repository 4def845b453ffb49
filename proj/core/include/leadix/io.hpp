#pragma once

// Dataset file formats. All files are UTF-8 CSV with a fixed header row:
//
//   publications.csv       paper_id,pi_id,year,journal,author_count,credit_position,tie_span,is_corresponding
//   journals.csv           journal,year,impact_factor
//   profiles.csv           pi_id,country,class,gender,birth_year,rank,funding_year
//   grants.csv             pi_id,year,amount,currency
//   journal_citations.csv  journal,year,total_citations,impact_factor
//   toughness table        metadata comment line, then weight,min_if
//
// Empty optional fields mean "unknown". Parsing is strict: every malformed
// row raises a ParseError naming the file, line and field.

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leadix/model.hpp"
#include "leadix/toughness.hpp"

namespace leadix {

struct GrantRecord {
    std::string pi_id;
    int year = 0;
    double amount = 0.0;
    std::string currency;

    friend bool operator==(const GrantRecord&, const GrantRecord&) = default;
};

// Parsers over in-memory text; `source` names the origin in error messages.
std::vector<PublicationRecord> parse_publications(std::string_view text, std::string_view source = "publications");
std::vector<JournalYearIF> parse_journals(std::string_view text, std::string_view source = "journals");
std::vector<InvestigatorProfile> parse_profiles(std::string_view text, std::string_view source = "profiles");
std::vector<GrantRecord> parse_grants(std::string_view text, std::string_view source = "grants");
std::vector<JournalCitations> parse_journal_citations(std::string_view text,
                                                      std::string_view source = "journal_citations");
ToughnessTable parse_toughness_table(std::string_view text, std::string_view source = "toughness_table");

// Canonical writers; parsing their output and writing again gives identical bytes.
std::string format_publications(std::span<const PublicationRecord> records);
std::string format_journals(std::span<const JournalYearIF> journals);
std::string format_profiles(std::span<const InvestigatorProfile> profiles);
std::string format_grants(std::span<const GrantRecord> grants);
std::string format_journal_citations(std::span<const JournalCitations> journals);
std::string format_toughness_table(const ToughnessTable& table);

std::vector<PublicationRecord> read_publications(const std::filesystem::path& path);
std::vector<JournalYearIF> read_journals(const std::filesystem::path& path);
std::vector<InvestigatorProfile> read_profiles(const std::filesystem::path& path);
std::vector<GrantRecord> read_grant_rows(const std::filesystem::path& path);
std::vector<JournalCitations> read_journal_citations(const std::filesystem::path& path);
ToughnessTable read_toughness_table(const std::filesystem::path& path);

/// Sums grant rows per PI. Throws Error when one PI has grants in two
/// currencies, since no conversion is performed.
std::map<std::string, Funding> aggregate_grants(std::span<const GrantRecord> grants);

/// read_grant_rows followed by aggregate_grants.
std::map<std::string, Funding> read_grants(const std::filesystem::path& path);

/// Sets total_funding on matching profiles. Returns the grant pi_ids with no profile.
std::vector<std::string> attach_funding(std::vector<InvestigatorProfile>& profiles,
                                        const std::map<std::string, Funding>& funding);

}  // namespace leadix
