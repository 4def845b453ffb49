#include "leadix/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace leadix {

std::string_view to_string(Country c) noexcept {
    switch (c) {
        case Country::china: return "CN";
        case Country::usa: return "US";
        case Country::other: return "OTHER";
    }
    return "OTHER";
}

std::string_view to_string(Gender g) noexcept {
    return g == Gender::male ? "male" : "female";
}

std::string_view to_string(AcademicRank r) noexcept {
    switch (r) {
        case AcademicRank::professor: return "professor";
        case AcademicRank::assoc_professor: return "assoc_professor";
        case AcademicRank::assist_professor: return "assist_professor";
    }
    return "professor";
}

std::optional<Country> parse_country(std::string_view s) noexcept {
    if (s == "CN") return Country::china;
    if (s == "US") return Country::usa;
    if (s == "OTHER") return Country::other;
    return std::nullopt;
}

std::optional<Gender> parse_gender(std::string_view s) noexcept {
    if (s == "male") return Gender::male;
    if (s == "female") return Gender::female;
    return std::nullopt;
}

std::optional<AcademicRank> parse_rank(std::string_view s) noexcept {
    if (s == "professor") return AcademicRank::professor;
    if (s == "assoc_professor") return AcademicRank::assoc_professor;
    if (s == "assist_professor") return AcademicRank::assist_professor;
    return std::nullopt;
}

std::string_view to_string(IfFallback f) noexcept {
    return f == IfFallback::off ? "off" : "nearest-prior-year";
}

std::optional<IfFallback> parse_if_fallback(std::string_view s) noexcept {
    if (s == "off") return IfFallback::off;
    if (s == "nearest-prior-year") return IfFallback::nearest_prior_year;
    return std::nullopt;
}

std::vector<PublicationRecord> ValidatedDataset::records() const {
    std::vector<PublicationRecord> out;
    out.reserve(publications_.size());
    for (const auto& p : publications_) out.push_back(p.record);
    return out;
}

std::span<const ResolvedPublication> ValidatedDataset::publications_of(std::string_view pi_id) const {
    auto lo = std::lower_bound(publications_.begin(), publications_.end(), pi_id,
                               [](const ResolvedPublication& p, std::string_view id) { return p.record.pi_id < id; });
    auto hi = std::upper_bound(lo, publications_.end(), pi_id,
                               [](std::string_view id, const ResolvedPublication& p) { return id < p.record.pi_id; });
    return {lo, hi};
}

const InvestigatorProfile* ValidatedDataset::find_profile(std::string_view pi_id) const {
    auto it = std::lower_bound(profiles_.begin(), profiles_.end(), pi_id,
                               [](const InvestigatorProfile& p, std::string_view id) { return p.pi_id < id; });
    if (it == profiles_.end() || it->pi_id != pi_id) return nullptr;
    return &*it;
}

std::size_t ValidatedDataset::corresponding_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(publications_.begin(), publications_.end(),
                                                  [](const auto& p) { return p.record.is_corresponding; }));
}

namespace {

std::string quoted(std::string_view s) {
    std::string out = "'";
    out.append(s);
    out += "'";
    return out;
}

void check_record_shape(const PublicationRecord& r, std::vector<Issue>& issues) {
    const std::string where = "paper " + quoted(r.paper_id) + ": ";
    if (r.paper_id.empty()) issues.push_back({"empty_paper_id", "publication with empty paper_id (pi " + quoted(r.pi_id) + ")"});
    if (r.author_count < 1) {
        issues.push_back({"author_count_out_of_range", where + "author_count " + std::to_string(r.author_count) + " < 1"});
        return;
    }
    if (r.credit_position < 1 || r.credit_position > r.author_count) {
        issues.push_back({"credit_position_out_of_range",
                          where + "credit_position " + std::to_string(r.credit_position) + " outside 1.." +
                              std::to_string(r.author_count)});
        return;
    }
    if (r.tie_span < 1 || r.credit_position + r.tie_span - 1 > r.author_count) {
        issues.push_back({"tie_span_out_of_range", where + "tie_span " + std::to_string(r.tie_span) +
                                                       " overruns author_count " + std::to_string(r.author_count)});
    }
}

}  // namespace

ValidatedDataset validate_dataset(std::vector<PublicationRecord> publications, std::vector<JournalYearIF> journals,
                                  std::vector<InvestigatorProfile> profiles, IfFallback fallback) {
    std::vector<Issue> errors;
    std::vector<Issue> warnings;

    // Journals: (journal, year) unique, IF finite and non-negative.
    std::sort(journals.begin(), journals.end(), [](const auto& a, const auto& b) {
        return std::tie(a.journal, a.year, a.impact_factor) < std::tie(b.journal, b.year, b.impact_factor);
    });
    for (std::size_t i = 0; i < journals.size(); ++i) {
        const auto& j = journals[i];
        if (!std::isfinite(j.impact_factor) || j.impact_factor < 0.0) {
            errors.push_back({"negative_impact_factor", "journal " + quoted(j.journal) + " year " +
                                                            std::to_string(j.year) + ": impact factor must be >= 0"});
        }
        if (i > 0 && journals[i - 1].journal == j.journal && journals[i - 1].year == j.year &&
            (i < 2 || journals[i - 2].journal != j.journal || journals[i - 2].year != j.year)) {
            errors.push_back({"duplicate_journal_year",
                              "journal " + quoted(j.journal) + " year " + std::to_string(j.year) + " listed more than once"});
        }
    }

    // Profiles: pi_id unique, class in 1..3, funding non-negative.
    std::sort(profiles.begin(), profiles.end(), [](const auto& a, const auto& b) { return a.pi_id < b.pi_id; });
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const auto& p = profiles[i];
        if (p.cohort_class < 1 || p.cohort_class > 3) {
            errors.push_back({"invalid_class", "pi " + quoted(p.pi_id) + ": class " + std::to_string(p.cohort_class) +
                                                   " not in {1,2,3}"});
        }
        if (p.total_funding && (!std::isfinite(p.total_funding->amount) || p.total_funding->amount < 0.0)) {
            errors.push_back({"negative_funding", "pi " + quoted(p.pi_id) + ": total funding must be >= 0"});
        }
        if (i > 0 && profiles[i - 1].pi_id == p.pi_id && (i < 2 || profiles[i - 2].pi_id != p.pi_id)) {
            errors.push_back({"duplicate_pi_id", "pi " + quoted(p.pi_id) + " has more than one profile"});
        }
    }

    // Publications: canonical order, then per-record checks.
    std::sort(publications.begin(), publications.end(), [](const auto& a, const auto& b) {
        return std::tie(a.pi_id, a.paper_id, a.year, a.journal, a.author_count, a.credit_position, a.tie_span,
                        a.is_corresponding) < std::tie(b.pi_id, b.paper_id, b.year, b.journal, b.author_count,
                                                       b.credit_position, b.tie_span, b.is_corresponding);
    });
    // A paper listed once per acknowledged grant counts once.
    const auto repeated = static_cast<std::size_t>(
        publications.end() - std::unique(publications.begin(), publications.end()));
    publications.resize(publications.size() - repeated);
    {
        std::vector<std::string_view> ids;
        ids.reserve(publications.size());
        for (const auto& p : publications) ids.push_back(p.paper_id);
        std::sort(ids.begin(), ids.end());
        for (std::size_t i = 1; i < ids.size(); ++i) {
            if (ids[i] == ids[i - 1] && (i < 2 || ids[i - 2] != ids[i])) {
                errors.push_back({"duplicate_paper_id", "paper_id " + quoted(ids[i]) + " appears more than once"});
            }
        }
    }

    std::map<std::string_view, std::map<int, double>> if_index;
    for (const auto& j : journals) if_index[j.journal].emplace(j.year, j.impact_factor);

    ValidatedDataset ds;
    ds.publications_.reserve(publications.size());
    std::vector<std::string_view> pi_ids;
    pi_ids.reserve(profiles.size());
    for (const auto& p : profiles) pi_ids.push_back(p.pi_id);

    std::size_t non_corresponding = 0;
    for (auto& rec : publications) {
        check_record_shape(rec, errors);
        const bool known_pi = std::binary_search(pi_ids.begin(), pi_ids.end(), std::string_view(rec.pi_id));
        if (!known_pi) {
            errors.push_back({"unknown_pi_id", "paper " + quoted(rec.paper_id) + ": unknown pi_id " + quoted(rec.pi_id)});
        }

        ResolvedPublication resolved{rec, 0.0, rec.year};
        auto jt = if_index.find(rec.journal);
        bool found = false;
        if (jt != if_index.end()) {
            if (auto yt = jt->second.find(rec.year); yt != jt->second.end()) {
                resolved.impact_factor = yt->second;
                found = true;
            } else if (fallback == IfFallback::nearest_prior_year) {
                auto prior = jt->second.lower_bound(rec.year);
                if (prior != jt->second.begin()) {
                    --prior;
                    resolved.impact_factor = prior->second;
                    resolved.if_year = prior->first;
                    found = true;
                    warnings.push_back({"impact_factor_fallback", "paper " + quoted(rec.paper_id) + ": journal " +
                                                                      quoted(rec.journal) + " year " +
                                                                      std::to_string(rec.year) + " uses impact factor of " +
                                                                      std::to_string(prior->first)});
                }
            }
        }
        if (!found) {
            errors.push_back({"missing_impact_factor", "paper " + quoted(rec.paper_id) + ": no impact factor for journal " +
                                                           quoted(rec.journal) + " in year " + std::to_string(rec.year)});
        }
        if (!rec.is_corresponding) ++non_corresponding;
        ds.publications_.push_back(std::move(resolved));
    }

    if (!errors.empty()) {
        std::sort(errors.begin(), errors.end());
        errors.erase(std::unique(errors.begin(), errors.end()), errors.end());
        throw ValidationError(std::move(errors));
    }

    if (repeated > 0) {
        warnings.push_back({"duplicate_record_merged",
                            std::to_string(repeated) + " repeated publication row(s) counted once"});
    }
    if (non_corresponding > 0) {
        warnings.push_back({"non_corresponding_skipped",
                            std::to_string(non_corresponding) +
                                " non-corresponding publication(s) retained but excluded from PI scoring"});
    }
    std::sort(warnings.begin(), warnings.end());

    ds.journals_ = std::move(journals);
    ds.profiles_ = std::move(profiles);
    ds.warnings_ = std::move(warnings);
    ds.fallback_ = fallback;
    return ds;
}

}  // namespace leadix
