#pragma once

// Run configuration and the load-validate-score steps shared by the CLI
// subcommands.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "leadix/analysis.hpp"
#include "leadix/credit.hpp"
#include "leadix/metrics.hpp"
#include "leadix/model.hpp"
#include "leadix/report.hpp"
#include "leadix/toughness.hpp"

namespace leadix {

struct RunConfig {
    std::filesystem::path publications;
    std::filesystem::path journals;
    std::filesystem::path profiles;
    std::optional<std::filesystem::path> grants;
    std::optional<std::filesystem::path> journal_citations;  // corpus for building the toughness table
    std::optional<std::filesystem::path> table;              // prebuilt table; wins over the corpus

    std::optional<Period> period;  // defaults to the publication year span
    int level_count = 10;
    DivisorMode divisor_mode = DivisorMode::geometric_sum;
    CreditScenario scenario = CreditScenario::ranked;
    IfFallback if_fallback = IfFallback::off;
    BinOptions bins;

    std::filesystem::path out_dir = "out";
    OutputFormat format = OutputFormat::csv;
    unsigned threads = 1;
    std::uint64_t seed = 42;
};

/// Throws Error naming the first configured input path that does not exist.
void check_inputs_exist(const RunConfig& config);

struct LoadedDataset {
    ValidatedDataset dataset;
    std::vector<std::string> unmatched_grant_ids;  // grant rows whose PI has no profile
};

/// Reads and validates publications, journals and profiles, attaching grant totals.
LoadedDataset load_dataset(const RunConfig& config);

/// Reads the prebuilt table, or builds one from the citation corpus. Throws
/// Error when neither is configured.
ToughnessTable load_table(const RunConfig& config);

/// Smallest and largest publication year; {0, 0} for an empty dataset.
Period publication_span(const ValidatedDataset& dataset);

struct RunCounts {
    std::size_t total_papers = 0;
    std::size_t corresponding_papers = 0;
    std::size_t investigators = 0;
    std::size_t unscored = 0;
};

RunCounts count_run(const ValidatedDataset& dataset, const std::vector<ScoreCard>& cards);

/// One-line summary for the diagnostic stream.
std::string describe(const RunCounts& counts);

struct ScoredRun {
    LoadedDataset loaded;
    ToughnessTable table;
    Period period;
    std::vector<ScoreCard> cards;
    RunCounts counts;
};

/// load_dataset, load_table, then score_all over the configured period.
ScoredRun score_run(const RunConfig& config);

}  // namespace leadix
