#pragma once

// Seeded synthetic corpora for tests, benchmarks and demos.
//
// The generator draws from std::mt19937_64 and converts raw draws by hand
// (no std:: distributions), so a given seed produces the same bytes with any
// standard library.

#include <cstdint>
#include <filesystem>
#include <vector>

#include "leadix/io.hpp"
#include "leadix/model.hpp"
#include "leadix/toughness.hpp"

namespace leadix {

struct SynthConfig {
    int pi_count = 100;
    int paper_count = 2000;  // spread over the PIs; each PI gets one first when paper_count >= pi_count
    int journal_count = 200;
    int start_year = 2008;
    int end_year = 2013;

    // Journal impact factors are log-normal: exp(mu + sigma * z).
    double if_log_mean = 1.0;
    double if_log_sd = 0.8;

    // Author counts: 1 + a geometric tail with this mean, capped at max_authors.
    double mean_extra_authors = 5.0;
    int max_authors = 30;

    double corresponding_fraction = 0.9;
    double tie_fraction = 0.1;      // share of multi-author papers with a two-way tie at the PI's position
    double china_fraction = 0.7;    // remaining PIs are US-based
    std::uint64_t seed = 42;
};

struct SynthCorpus {
    std::vector<PublicationRecord> publications;
    std::vector<JournalYearIF> journals;
    std::vector<InvestigatorProfile> profiles;
    std::vector<GrantRecord> grants;
    std::vector<JournalCitations> journal_citations;
};

/// Throws std::invalid_argument on negative sizes, an empty year span, a
/// positive paper count with no PIs, or fractions outside [0, 1].
SynthCorpus synth_corpus(const SynthConfig& config);

/// File names used by write_synth_corpus.
inline constexpr const char* kPublicationsFile = "publications.csv";
inline constexpr const char* kJournalsFile = "journals.csv";
inline constexpr const char* kProfilesFile = "profiles.csv";
inline constexpr const char* kGrantsFile = "grants.csv";
inline constexpr const char* kJournalCitationsFile = "journal_citations.csv";

/// Generates a corpus and writes the five CSV files into `dir`. Returns the written paths.
std::vector<std::filesystem::path> write_synth_corpus(const SynthConfig& config, const std::filesystem::path& dir);

}  // namespace leadix
