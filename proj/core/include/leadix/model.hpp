#pragma once

// Domain types shared by every module, and validation of raw records into an
// analysis-ready dataset.

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leadix/error.hpp"

namespace leadix {

/// One paper attributed to a principal investigator.
///
/// `credit_position` is the PI's rank in the contribution ordering (1 = most
/// credit). `tie_span` counts the consecutive positions, starting at
/// `credit_position`, that share equal contribution; 1 means no tie.
struct PublicationRecord {
    std::string paper_id;
    std::string pi_id;
    int year = 0;
    std::string journal;
    int author_count = 1;
    int credit_position = 1;
    int tie_span = 1;
    bool is_corresponding = true;

    friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

/// Journal impact factor for one (journal, year).
struct JournalYearIF {
    std::string journal;
    int year = 0;
    double impact_factor = 0.0;

    friend bool operator==(const JournalYearIF&, const JournalYearIF&) = default;
};

enum class Country { china, usa, other };
enum class Gender { male, female };
enum class AcademicRank { professor, assoc_professor, assist_professor };

struct Funding {
    double amount = 0.0;
    std::string currency;

    friend bool operator==(const Funding&, const Funding&) = default;
};

struct InvestigatorProfile {
    std::string pi_id;
    Country country = Country::other;
    int cohort_class = 1;  // institutional tier, 1..3
    std::optional<Gender> gender;
    std::optional<int> birth_year;
    std::optional<AcademicRank> rank;
    std::optional<int> funding_year;  // year the grant under evaluation was awarded
    std::optional<Funding> total_funding;

    friend bool operator==(const InvestigatorProfile&, const InvestigatorProfile&) = default;
};

std::string_view to_string(Country c) noexcept;
std::string_view to_string(Gender g) noexcept;
std::string_view to_string(AcademicRank r) noexcept;
std::optional<Country> parse_country(std::string_view s) noexcept;
std::optional<Gender> parse_gender(std::string_view s) noexcept;
std::optional<AcademicRank> parse_rank(std::string_view s) noexcept;

/// How a publication whose (journal, year) has no impact factor is resolved.
enum class IfFallback {
    off,                 // missing entry is a validation error
    nearest_prior_year,  // use the latest earlier year for the same journal
};

std::string_view to_string(IfFallback f) noexcept;
std::optional<IfFallback> parse_if_fallback(std::string_view s) noexcept;

/// A publication with its impact factor resolved.
struct ResolvedPublication {
    PublicationRecord record;
    double impact_factor = 0.0;
    int if_year = 0;  // differs from record.year only under the fallback policy

    friend bool operator==(const ResolvedPublication&, const ResolvedPublication&) = default;
};

/// Well-formed analysis input. Immutable once built.
///
/// Publications are held sorted by (pi_id, paper_id), journals by (journal,
/// year) and profiles by pi_id, so the content never depends on input order.
class ValidatedDataset {
public:
    const std::vector<ResolvedPublication>& publications() const noexcept { return publications_; }
    const std::vector<JournalYearIF>& journals() const noexcept { return journals_; }
    const std::vector<InvestigatorProfile>& profiles() const noexcept { return profiles_; }
    const std::vector<Issue>& warnings() const noexcept { return warnings_; }
    IfFallback fallback() const noexcept { return fallback_; }

    /// Raw records, in canonical order; re-validating them reproduces this dataset.
    std::vector<PublicationRecord> records() const;

    /// All publications of one PI (corresponding or not), sorted by paper_id.
    std::span<const ResolvedPublication> publications_of(std::string_view pi_id) const;
    const InvestigatorProfile* find_profile(std::string_view pi_id) const;

    std::size_t corresponding_count() const noexcept;

    friend bool operator==(const ValidatedDataset&, const ValidatedDataset&) = default;

private:
    friend ValidatedDataset validate_dataset(std::vector<PublicationRecord>, std::vector<JournalYearIF>,
                                             std::vector<InvestigatorProfile>, IfFallback);

    std::vector<ResolvedPublication> publications_;
    std::vector<JournalYearIF> journals_;
    std::vector<InvestigatorProfile> profiles_;
    std::vector<Issue> warnings_;
    IfFallback fallback_ = IfFallback::off;
};

/// Checks records against each other and builds a ValidatedDataset.
///
/// Throws ValidationError listing every problem (sorted, so the result does not
/// depend on record order): conflicting rows for one paper_id, credit position
/// or tie span out of range, unknown pi_id, missing impact factor (when `fallback` is off),
/// negative or duplicate journal impact factors, invalid profile class.
///
/// Identical repeated rows (one paper listed under several grants) collapse to
/// one with a warning. Non-corresponding publications are kept but produce a
/// warning, since they do not enter PI scoring.
ValidatedDataset validate_dataset(std::vector<PublicationRecord> publications,
                                  std::vector<JournalYearIF> journals,
                                  std::vector<InvestigatorProfile> profiles,
                                  IfFallback fallback = IfFallback::off);

}  // namespace leadix
