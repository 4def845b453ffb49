#pragma once

// Aggregations over score cards: cohort tables with significance marks,
// equivalent-time binning, annual trends and funding correlation.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leadix/metrics.hpp"
#include "leadix/model.hpp"
#include "leadix/stats.hpp"

namespace leadix {

// ---------------------------------------------------------------------------
// Binning by equivalent time

struct TimeSample {
    double t = 0.0;
    double leadership = 0.0;

    friend bool operator==(const TimeSample&, const TimeSample&) = default;
};

struct Bin {
    long long index = 0;  // center = index * step
    double center = 0.0;
    double mean_leadership = 0.0;
    int count = 0;

    friend bool operator==(const Bin&, const Bin&) = default;
};

struct ExcludedSample {
    double t = 0.0;
    double leadership = 0.0;
    std::string reason;  // "excluded_value" or "above_max_t"

    friend bool operator==(const ExcludedSample&, const ExcludedSample&) = default;
};

struct BinSeries {
    double step = 0.5;
    std::vector<Bin> bins;                // ascending centers
    std::vector<ExcludedSample> excluded;  // sorted by (t, leadership)

    friend bool operator==(const BinSeries&, const BinSeries&) = default;
};

struct BinOptions {
    double step = 0.5;
    std::optional<double> max_t;     // samples with t > max_t are excluded
    std::vector<double> exclude_t;   // samples whose t matches one of these are excluded
    double exclude_tolerance = 1e-9;
};

/// Index k of the multiple k * step nearest to t; exact midpoints go to the larger multiple.
long long nearest_step_index(double t, double step);

/// Clusters samples to the nearest multiple of the step and averages L per bin.
/// Throws std::invalid_argument when step <= 0.
BinSeries bin_by_time(std::span<const TimeSample> samples, const BinOptions& options = {});

/// (T, L) pairs of the scored cards.
std::vector<TimeSample> time_samples(std::span<const ScoreCard> cards);

// ---------------------------------------------------------------------------
// Annual trends

struct CohortFilter {
    std::optional<Country> country;
    std::optional<int> cohort_class;

    bool matches(const InvestigatorProfile& p) const noexcept;
};

struct TrendMeans {
    double leadership = 0.0;
    double output = 0.0;
    double efficiency = 0.0;
    double time = 0.0;

    friend bool operator==(const TrendMeans&, const TrendMeans&) = default;
};

struct TrendPoint {
    int year = 0;
    int scored = 0;                   // investigators averaged this year
    std::optional<TrendMeans> means;  // absent when nobody scored

    friend bool operator==(const TrendPoint&, const TrendPoint&) = default;
};

struct TrendSeries {
    Period span;
    std::vector<TrendPoint> points;  // one per year, contiguous

    friend bool operator==(const TrendSeries&, const TrendSeries&) = default;
};

/// Scores each matching investigator on each year's papers alone and
/// averages L, O, E and T over those with at least one scored paper.
/// Throws std::invalid_argument when span.end_year < span.start_year.
TrendSeries trend(const ValidatedDataset& dataset, const ToughnessTable& table, Period span,
                  const CohortFilter& filter = {}, const ScoringOptions& options = {});

// ---------------------------------------------------------------------------
// Cohort statistics

enum class Grouping { cohort_class, gender, age_band, rank, country };
enum class Metric { o_raw, o_weighted, t_equiv, efficiency, leadership };

inline constexpr std::array<Metric, 5> kAllMetrics = {Metric::o_raw, Metric::o_weighted, Metric::t_equiv,
                                                      Metric::efficiency, Metric::leadership};

std::string_view to_string(Grouping g) noexcept;
std::optional<Grouping> parse_grouping(std::string_view s) noexcept;
std::string_view to_string(Metric m) noexcept;
double metric_value(const CardMetrics& m, Metric which) noexcept;

/// Age band label with inclusive lower bounds: "Under 36", "36-40", ..., "56-60", "Over 60".
std::string age_band(int age);

/// Group label of a profile, or nullopt when the attribute is unknown.
/// Age is funding_year - birth_year.
std::optional<std::string> group_key(const InvestigatorProfile& p, Grouping g);

/// Canonical display order of the labels of a grouping.
std::vector<std::string> group_order(Grouping g);

struct MetricSummary {
    Metric metric = Metric::leadership;
    double mean = 0.0;
    double sd = 0.0;
    std::optional<double> p_value;  // Welch test against the reference group
    Significance mark = Significance::none;

    friend bool operator==(const MetricSummary&, const MetricSummary&) = default;
};

struct CohortSummary {
    std::string key;
    int n = 0;
    std::vector<MetricSummary> metrics;  // kAllMetrics order

    friend bool operator==(const CohortSummary&, const CohortSummary&) = default;
};

struct CohortReport {
    Grouping grouping = Grouping::cohort_class;
    std::optional<std::string> reference;
    std::vector<CohortSummary> groups;  // group_order order, empty groups omitted
    int excluded_unscored = 0;
    int excluded_unknown_group = 0;

    friend bool operator==(const CohortReport&, const CohortReport&) = default;
};

/// Per-group mean and SD of every metric. When `reference` names a group,
/// every other group carries Welch p-values against it (both groups need at
/// least two members) and the matching star marks.
CohortReport cohort_report(std::span<const InvestigatorProfile> profiles, std::span<const ScoreCard> cards,
                           Grouping grouping, std::optional<std::string> reference = std::nullopt);

/// Symmetric matrix of raw pairwise Welch p-values for one metric, without
/// family-wise adjustment. Entries are absent on the diagonal and where a
/// group has fewer than two members.
struct PairwiseMatrix {
    Metric metric = Metric::leadership;
    std::vector<std::string> keys;
    std::vector<std::vector<std::optional<double>>> p_values;
};

PairwiseMatrix pairwise_p_values(std::span<const InvestigatorProfile> profiles, std::span<const ScoreCard> cards,
                                 Grouping grouping, Metric metric);

// ---------------------------------------------------------------------------
// Leadership versus funding

struct FundingPoint {
    std::string pi_id;
    double funding = 0.0;
    double leadership = 0.0;
    int cohort_class = 0;
};

struct CorrelationRow {
    std::string group;  // "all" or a class label
    int n = 0;
    std::optional<PearsonResult> result;  // absent for n < 3 or zero variance
};

struct FundingCorrelation {
    std::string currency;
    std::vector<FundingPoint> points;  // sorted by pi_id
    std::vector<CorrelationRow> rows;  // "all", then classes 1..3
};

/// Pearson correlation of L with total funding, overall and per class.
/// Uses scored investigators with known positive funding in `currency`, or in
/// the single currency present when none is given. Throws
/// std::invalid_argument when several currencies are present and none is chosen.
FundingCorrelation correlate_funding(std::span<const InvestigatorProfile> profiles, std::span<const ScoreCard> cards,
                                     std::optional<std::string> currency = std::nullopt);

}  // namespace leadix
