#pragma once

// Report and plot-data emission.
//
// Every report is a flat table rendered either as delimited text or as a JSON
// array of objects with the same field names. Floating values carry six
// significant digits; absent values are empty cells (CSV/TSV) or null (JSON).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "leadix/analysis.hpp"
#include "leadix/metrics.hpp"

namespace leadix {

enum class OutputFormat { csv, json };

std::string_view to_string(OutputFormat f) noexcept;
std::optional<OutputFormat> parse_output_format(std::string_view s) noexcept;

/// A report cell: absent, text, integer, real (printed with six significant digits) or flag.
using Cell = std::variant<std::monostate, std::string, long long, double, bool>;

struct ReportTable {
    std::string name;  // file stem
    char delimiter = ',';
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::string file_name(OutputFormat format) const;
    std::string render(OutputFormat format) const;
};

ReportTable scorecard_table(std::span<const ScoreCard> cards);
ReportTable cohort_table(const CohortReport& report);
ReportTable cohort_counts_table(const CohortReport& report);
ReportTable pairwise_table(const PairwiseMatrix& matrix, Grouping grouping);

/// Two-column series files: center/mean L, center/count, plus the excluded samples.
std::vector<ReportTable> bin_tables(const BinSeries& bins);

/// One two-column year/value series per metric (L, O, E, T) and the per-year counts.
std::vector<ReportTable> trend_tables(const TrendSeries& trend);

/// Correlation rows and the (funding, L, class) scatter.
std::vector<ReportTable> correlation_tables(const FundingCorrelation& corr);

struct ReportBundle {
    std::optional<std::vector<ScoreCard>> scorecards;
    std::optional<CohortReport> cohort;
    std::vector<PairwiseMatrix> pairwise;
    std::optional<BinSeries> bins;
    std::optional<TrendSeries> trend;
    std::optional<FundingCorrelation> correlation;
};

/// All tables of the bundle, in a fixed order.
std::vector<ReportTable> report_tables(const ReportBundle& bundle);

/// Writes every table of the bundle into `dir` (created if needed) and returns
/// the written paths. Throws leadix::Error when a file cannot be written.
std::vector<std::filesystem::path> emit_reports(const ReportBundle& bundle, const std::filesystem::path& dir,
                                                OutputFormat format);

/// Reads scorecards.csv as written by scorecard_table.
std::vector<ScoreCard> parse_scorecards(std::string_view text, std::string_view source = "scorecards");
std::vector<ScoreCard> read_scorecards(const std::filesystem::path& path);

/// Reads the three bin files written by emit_reports (CSV format) back into a BinSeries.
BinSeries read_bin_series(const std::filesystem::path& dir, double step);

}  // namespace leadix
