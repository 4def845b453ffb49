#pragma once

// Per-investigator output, equivalent time, efficiency and leadership.
//
//   O' = sum IF_i                     (unweighted output)
//   O  = sum V_i,  V_i = w(IF_i)*IF_i (toughness-weighted output)
//   T  = (sum_j V_j / A_j) / O        (equivalent time, leader's own time scale)
//   E  = O / T
//   L  = sqrt(O * E) = O / sqrt(T)

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leadix/credit.hpp"
#include "leadix/model.hpp"
#include "leadix/toughness.hpp"

namespace leadix {

struct ScoredPaper {
    std::string paper_id;
    double value_raw = 0.0;  // impact factor
    double value = 0.0;      // weighted impact factor
    double a = 1.0;          // the PI's A-index on this paper
};

struct TeamPaper {
    double a_index = 1.0;
    double value = 0.0;
};

double output_raw(std::span<const ScoredPaper> papers) noexcept;
double output_weighted(std::span<const ScoredPaper> papers) noexcept;

/// Team-credited output sum A_i * V_i.
double team_output(std::span<const TeamPaper> papers) noexcept;

/// Throws UndefinedMetric when the weighted values sum to zero.
double equivalent_time(std::span<const ScoredPaper> papers);

/// o / t. Throws std::invalid_argument when t <= 0.
double efficiency(double o, double t);

/// sqrt(o * e). Throws std::invalid_argument on negative inputs.
double leadership(double o, double e);

/// Resource-based variant O / sqrt(funding). Only comparable within one currency.
/// Throws std::invalid_argument when funding <= 0.
double funding_leadership(double o, double funding);

struct Period {
    int start_year = 0;
    int end_year = 0;

    bool contains(int year) const noexcept { return year >= start_year && year <= end_year; }
    friend bool operator==(const Period&, const Period&) = default;
};

struct CardMetrics {
    double o_raw = 0.0;
    double o_weighted = 0.0;
    double t_equiv = 1.0;
    double efficiency = 0.0;
    double leadership = 0.0;

    friend bool operator==(const CardMetrics&, const CardMetrics&) = default;
};

struct ScoreCard {
    std::string pi_id;
    Period period;
    int paper_count = 0;
    std::optional<CardMetrics> metrics;       // absent when unscored
    std::optional<double> funding_leadership;  // O / sqrt(total funding), when funding is known and positive
    std::string unscored_reason;               // "no_papers" or "zero_output" when metrics are absent

    bool scored() const noexcept { return metrics.has_value(); }
    friend bool operator==(const ScoreCard&, const ScoreCard&) = default;
};

struct ScoringOptions {
    CreditScenario scenario = CreditScenario::ranked;
    bool corresponding_only = true;
};

/// The PI's papers inside `period` as ScoredPapers, sorted by paper_id.
std::vector<ScoredPaper> scored_papers(const ValidatedDataset& dataset, std::string_view pi_id, Period period,
                                       const ToughnessTable& table, const ScoringOptions& options = {});

/// Builds a card from already scored papers. An empty list gives an unscored card.
/// Throws UndefinedMetric when every paper has weighted value 0.
ScoreCard score_papers(std::string pi_id, Period period, std::span<const ScoredPaper> papers,
                       std::optional<double> total_funding = std::nullopt);

/// Scores one investigator's corresponding-author papers within `period`.
ScoreCard score_investigator(const ValidatedDataset& dataset, std::string_view pi_id, Period period,
                             const ToughnessTable& table, const ScoringOptions& options = {});

/// Scores every profiled investigator, using up to `threads` workers.
///
/// Cards are returned sorted by pi_id regardless of thread count. A PI whose
/// papers all carry IF 0 gets an unscored card with reason "zero_output"
/// instead of aborting the batch.
std::vector<ScoreCard> score_all(const ValidatedDataset& dataset, Period period, const ToughnessTable& table,
                                 const ScoringOptions& options = {}, unsigned threads = 1);

}  // namespace leadix
