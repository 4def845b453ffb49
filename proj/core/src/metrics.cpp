#include "leadix/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "leadix/summation.hpp"

namespace leadix {

namespace {

template <typename Proj>
double sum_of(std::span<const ScoredPaper> papers, Proj proj) {
    std::vector<double> values;
    values.reserve(papers.size());
    for (const auto& p : papers) values.push_back(proj(p));
    return pairwise_sum(values);
}

}  // namespace

double output_raw(std::span<const ScoredPaper> papers) noexcept {
    return sum_of(papers, [](const ScoredPaper& p) { return p.value_raw; });
}

double output_weighted(std::span<const ScoredPaper> papers) noexcept {
    return sum_of(papers, [](const ScoredPaper& p) { return p.value; });
}

double team_output(std::span<const TeamPaper> papers) noexcept {
    std::vector<double> terms;
    terms.reserve(papers.size());
    for (const auto& p : papers) terms.push_back(p.a_index * p.value);
    return pairwise_sum(terms);
}

double equivalent_time(std::span<const ScoredPaper> papers) {
    const double total = output_weighted(papers);
    if (!(total > 0.0)) throw UndefinedMetric("equivalent time is undefined when total output is zero");
    const double effort = sum_of(papers, [](const ScoredPaper& p) { return p.value / p.a; });
    return effort / total;
}

double efficiency(double o, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("efficiency: equivalent time must be positive");
    return o / t;
}

double leadership(double o, double e) {
    if (o < 0.0 || e < 0.0) throw std::invalid_argument("leadership: output and efficiency must be non-negative");
    return std::sqrt(o * e);
}

double funding_leadership(double o, double funding) {
    if (!(funding > 0.0)) throw std::invalid_argument("funding leadership: funding must be positive");
    return o / std::sqrt(funding);
}

std::vector<ScoredPaper> scored_papers(const ValidatedDataset& dataset, std::string_view pi_id, Period period,
                                       const ToughnessTable& table, const ScoringOptions& options) {
    std::vector<ScoredPaper> out;
    for (const auto& pub : dataset.publications_of(pi_id)) {
        const auto& r = pub.record;
        if (!period.contains(r.year)) continue;
        if (options.corresponding_only && !r.is_corresponding) continue;
        const int span = effective_tie_span(options.scenario, r.author_count, r.credit_position, r.tie_span);
        out.push_back({r.paper_id, pub.impact_factor, table.weighted_if(pub.impact_factor),
                       a_index(r.author_count, r.credit_position, span)});
    }
    return out;
}

ScoreCard score_papers(std::string pi_id, Period period, std::span<const ScoredPaper> papers,
                       std::optional<double> total_funding) {
    ScoreCard card;
    card.pi_id = std::move(pi_id);
    card.period = period;
    card.paper_count = static_cast<int>(papers.size());
    if (papers.empty()) {
        card.unscored_reason = "no_papers";
        return card;
    }
    CardMetrics m;
    m.o_raw = output_raw(papers);
    m.o_weighted = output_weighted(papers);
    m.t_equiv = equivalent_time(papers);
    m.efficiency = efficiency(m.o_weighted, m.t_equiv);
    m.leadership = leadership(m.o_weighted, m.efficiency);
    if (total_funding && *total_funding > 0.0) card.funding_leadership = funding_leadership(m.o_weighted, *total_funding);
    card.metrics = m;
    return card;
}

ScoreCard score_investigator(const ValidatedDataset& dataset, std::string_view pi_id, Period period,
                             const ToughnessTable& table, const ScoringOptions& options) {
    const auto papers = scored_papers(dataset, pi_id, period, table, options);
    std::optional<double> funding;
    if (const auto* profile = dataset.find_profile(pi_id); profile && profile->total_funding) {
        funding = profile->total_funding->amount;
    }
    return score_papers(std::string(pi_id), period, papers, funding);
}

std::vector<ScoreCard> score_all(const ValidatedDataset& dataset, Period period, const ToughnessTable& table,
                                 const ScoringOptions& options, unsigned threads) {
    const auto& profiles = dataset.profiles();
    std::vector<ScoreCard> cards(profiles.size());

    auto score_one = [&](std::size_t i) {
        const auto& id = profiles[i].pi_id;
        try {
            cards[i] = score_investigator(dataset, id, period, table, options);
        } catch (const UndefinedMetric&) {
            ScoreCard c;
            c.pi_id = id;
            c.period = period;
            c.paper_count = static_cast<int>(scored_papers(dataset, id, period, table, options).size());
            c.unscored_reason = "zero_output";
            cards[i] = std::move(c);
        }
    };

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, profiles.size()))));
    if (threads == 1) {
        for (std::size_t i = 0; i < profiles.size(); ++i) score_one(i);
        return cards;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < profiles.size() && !failed; i = next++) {
                try {
                    score_one(i);
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                }
            }
        });
    }
    workers.clear();
    if (failure) std::rethrow_exception(failure);
    return cards;
}

}  // namespace leadix
