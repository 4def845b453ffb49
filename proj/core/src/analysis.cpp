#include "leadix/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "leadix/summation.hpp"

namespace leadix {

namespace {

double mean_of(const std::vector<double>& v) {
    return pairwise_sum(v) / static_cast<double>(v.size());
}

bool matches_any(double t, const std::vector<double>& targets, double tol) {
    return std::any_of(targets.begin(), targets.end(),
                       [&](double e) { return std::abs(t - e) <= tol * std::max(1.0, std::abs(e)); });
}

std::map<std::string_view, const InvestigatorProfile*> index_profiles(std::span<const InvestigatorProfile> profiles) {
    std::map<std::string_view, const InvestigatorProfile*> out;
    for (const auto& p : profiles) out.emplace(p.pi_id, &p);
    return out;
}

struct GroupedCards {
    std::vector<std::pair<std::string, std::vector<CardMetrics>>> groups;  // display order
    int excluded_unscored = 0;
    int excluded_unknown = 0;
};

GroupedCards group_cards(std::span<const InvestigatorProfile> profiles, std::span<const ScoreCard> cards,
                         Grouping grouping) {
    const auto by_id = index_profiles(profiles);
    std::map<std::string, std::vector<CardMetrics>> buckets;
    GroupedCards out;
    for (const auto& card : cards) {
        if (!card.scored()) {
            ++out.excluded_unscored;
            continue;
        }
        auto it = by_id.find(card.pi_id);
        std::optional<std::string> key;
        if (it != by_id.end()) key = group_key(*it->second, grouping);
        if (!key) {
            ++out.excluded_unknown;
            continue;
        }
        buckets[*key].push_back(*card.metrics);
    }
    for (const auto& label : group_order(grouping)) {
        if (auto it = buckets.find(label); it != buckets.end()) {
            out.groups.emplace_back(label, std::move(it->second));
            buckets.erase(it);
        }
    }
    for (auto& [label, values] : buckets) out.groups.emplace_back(label, std::move(values));
    return out;
}

std::vector<double> column(const std::vector<CardMetrics>& rows, Metric m) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(metric_value(r, m));
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

long long nearest_step_index(double t, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("bin step must be positive");
    const auto k0 = static_cast<long long>(std::floor(t / step));
    long long best = k0 - 1;
    double best_dist = std::abs(t - static_cast<double>(best) * step);
    for (long long k = k0; k <= k0 + 2; ++k) {
        const double d = std::abs(t - static_cast<double>(k) * step);
        if (d <= best_dist) {
            best = k;
            best_dist = d;
        }
    }
    return best;
}

BinSeries bin_by_time(std::span<const TimeSample> samples, const BinOptions& options) {
    if (!(options.step > 0.0)) throw std::invalid_argument("bin step must be positive");
    BinSeries out;
    out.step = options.step;
    std::map<long long, std::vector<double>> buckets;
    for (const auto& s : samples) {
        if (matches_any(s.t, options.exclude_t, options.exclude_tolerance)) {
            out.excluded.push_back({s.t, s.leadership, "excluded_value"});
        } else if (options.max_t && s.t > *options.max_t) {
            out.excluded.push_back({s.t, s.leadership, "above_max_t"});
        } else {
            buckets[nearest_step_index(s.t, options.step)].push_back(s.leadership);
        }
    }
    for (auto& [k, ls] : buckets) {
        out.bins.push_back({k, static_cast<double>(k) * options.step, mean_of(ls), static_cast<int>(ls.size())});
    }
    std::sort(out.excluded.begin(), out.excluded.end(), [](const auto& a, const auto& b) {
        return std::tie(a.t, a.leadership, a.reason) < std::tie(b.t, b.leadership, b.reason);
    });
    return out;
}

std::vector<TimeSample> time_samples(std::span<const ScoreCard> cards) {
    std::vector<TimeSample> out;
    for (const auto& c : cards) {
        if (c.metrics) out.push_back({c.metrics->t_equiv, c.metrics->leadership});
    }
    return out;
}

// ---------------------------------------------------------------------------

bool CohortFilter::matches(const InvestigatorProfile& p) const noexcept {
    if (country && p.country != *country) return false;
    if (cohort_class && p.cohort_class != *cohort_class) return false;
    return true;
}

TrendSeries trend(const ValidatedDataset& dataset, const ToughnessTable& table, Period span,
                  const CohortFilter& filter, const ScoringOptions& options) {
    if (span.end_year < span.start_year) throw std::invalid_argument("trend span is empty");
    TrendSeries out;
    out.span = span;
    for (int year = span.start_year; year <= span.end_year; ++year) {
        const Period one_year{year, year};
        std::vector<double> l, o, e, t;
        for (const auto& profile : dataset.profiles()) {
            if (!filter.matches(profile)) continue;
            const auto papers = scored_papers(dataset, profile.pi_id, one_year, table, options);
            if (papers.empty()) continue;
            ScoreCard card;
            try {
                card = score_papers(profile.pi_id, one_year, papers);
            } catch (const UndefinedMetric&) {
                continue;
            }
            l.push_back(card.metrics->leadership);
            o.push_back(card.metrics->o_weighted);
            e.push_back(card.metrics->efficiency);
            t.push_back(card.metrics->t_equiv);
        }
        TrendPoint point;
        point.year = year;
        point.scored = static_cast<int>(l.size());
        if (!l.empty()) point.means = TrendMeans{mean_of(l), mean_of(o), mean_of(e), mean_of(t)};
        out.points.push_back(point);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Grouping g) noexcept {
    switch (g) {
        case Grouping::cohort_class: return "class";
        case Grouping::gender: return "gender";
        case Grouping::age_band: return "age_band";
        case Grouping::rank: return "rank";
        case Grouping::country: return "country";
    }
    return "class";
}

std::optional<Grouping> parse_grouping(std::string_view s) noexcept {
    for (auto g : {Grouping::cohort_class, Grouping::gender, Grouping::age_band, Grouping::rank, Grouping::country}) {
        if (to_string(g) == s) return g;
    }
    return std::nullopt;
}

std::string_view to_string(Metric m) noexcept {
    switch (m) {
        case Metric::o_raw: return "o_raw";
        case Metric::o_weighted: return "o_weighted";
        case Metric::t_equiv: return "t_equiv";
        case Metric::efficiency: return "efficiency";
        case Metric::leadership: return "leadership";
    }
    return "leadership";
}

double metric_value(const CardMetrics& m, Metric which) noexcept {
    switch (which) {
        case Metric::o_raw: return m.o_raw;
        case Metric::o_weighted: return m.o_weighted;
        case Metric::t_equiv: return m.t_equiv;
        case Metric::efficiency: return m.efficiency;
        case Metric::leadership: return m.leadership;
    }
    return m.leadership;
}

std::string age_band(int age) {
    if (age < 36) return "Under 36";
    if (age > 60) return "Over 60";
    const int lo = 36 + ((age - 36) / 5) * 5;
    return std::to_string(lo) + "-" + std::to_string(lo + 4);
}

std::optional<std::string> group_key(const InvestigatorProfile& p, Grouping g) {
    switch (g) {
        case Grouping::cohort_class: return std::to_string(p.cohort_class);
        case Grouping::gender:
            if (!p.gender) return std::nullopt;
            return std::string(to_string(*p.gender));
        case Grouping::age_band:
            if (!p.birth_year || !p.funding_year) return std::nullopt;
            return age_band(*p.funding_year - *p.birth_year);
        case Grouping::rank:
            if (!p.rank) return std::nullopt;
            return std::string(to_string(*p.rank));
        case Grouping::country: return std::string(to_string(p.country));
    }
    return std::nullopt;
}

std::vector<std::string> group_order(Grouping g) {
    switch (g) {
        case Grouping::cohort_class: return {"1", "2", "3"};
        case Grouping::gender: return {"male", "female"};
        case Grouping::age_band: return {"Under 36", "36-40", "41-45", "46-50", "51-55", "56-60", "Over 60"};
        case Grouping::rank: return {"professor", "assoc_professor", "assist_professor"};
        case Grouping::country: return {"CN", "US", "OTHER"};
    }
    return {};
}

CohortReport cohort_report(std::span<const InvestigatorProfile> profiles, std::span<const ScoreCard> cards,
                           Grouping grouping, std::optional<std::string> reference) {
    auto grouped = group_cards(profiles, cards, grouping);
    CohortReport report;
    report.grouping = grouping;
    report.reference = reference;
    report.excluded_unscored = grouped.excluded_unscored;
    report.excluded_unknown_group = grouped.excluded_unknown;

    const std::vector<CardMetrics>* ref_rows = nullptr;
    if (reference) {
        for (const auto& [key, rows] : grouped.groups) {
            if (key == *reference) ref_rows = &rows;
        }
    }

    for (const auto& [key, rows] : grouped.groups) {
        CohortSummary summary;
        summary.key = key;
        summary.n = static_cast<int>(rows.size());
        for (Metric m : kAllMetrics) {
            const auto values = column(rows, m);
            const auto ms = mean_sd(values);
            MetricSummary entry{m, ms.mean, ms.sd, std::nullopt, Significance::none};
            if (ref_rows && key != *reference && rows.size() >= 2 && ref_rows->size() >= 2) {
                const auto ref_values = column(*ref_rows, m);
                entry.p_value = welch_t_test(values, ref_values).p_two_sided;
                entry.mark = significance_of(*entry.p_value);
            }
            summary.metrics.push_back(entry);
        }
        report.groups.push_back(std::move(summary));
    }
    return report;
}

PairwiseMatrix pairwise_p_values(std::span<const InvestigatorProfile> profiles, std::span<const ScoreCard> cards,
                                 Grouping grouping, Metric metric) {
    const auto grouped = group_cards(profiles, cards, grouping);
    PairwiseMatrix out;
    out.metric = metric;
    std::vector<std::vector<double>> columns;
    for (const auto& [key, rows] : grouped.groups) {
        out.keys.push_back(key);
        columns.push_back(column(rows, metric));
    }
    const std::size_t k = out.keys.size();
    out.p_values.assign(k, std::vector<std::optional<double>>(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (columns[i].size() < 2 || columns[j].size() < 2) continue;
            const double p = welch_t_test(columns[i], columns[j]).p_two_sided;
            out.p_values[i][j] = p;
            out.p_values[j][i] = p;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

FundingCorrelation correlate_funding(std::span<const InvestigatorProfile> profiles, std::span<const ScoreCard> cards,
                                     std::optional<std::string> currency) {
    const auto by_id = index_profiles(profiles);
    struct Candidate {
        const ScoreCard* card;
        const InvestigatorProfile* profile;
    };
    std::vector<Candidate> candidates;
    std::set<std::string> currencies;
    for (const auto& card : cards) {
        if (!card.scored()) continue;
        auto it = by_id.find(card.pi_id);
        if (it == by_id.end()) continue;
        const auto& funding = it->second->total_funding;
        if (!funding || !(funding->amount > 0.0)) continue;
        currencies.insert(funding->currency);
        candidates.push_back({&card, it->second});
    }

    FundingCorrelation out;
    if (currency) {
        out.currency = *currency;
    } else if (currencies.size() > 1) {
        throw std::invalid_argument("funding is recorded in several currencies; choose one, no conversion is performed");
    } else if (currencies.size() == 1) {
        out.currency = *currencies.begin();
    }

    for (const auto& c : candidates) {
        if (c.profile->total_funding->currency != out.currency) continue;
        out.points.push_back({c.card->pi_id, c.profile->total_funding->amount, c.card->metrics->leadership,
                              c.profile->cohort_class});
    }
    std::sort(out.points.begin(), out.points.end(), [](const auto& a, const auto& b) { return a.pi_id < b.pi_id; });

    auto make_row = [&](std::string label, std::optional<int> cls) {
        std::vector<double> x, y;
        for (const auto& p : out.points) {
            if (cls && p.cohort_class != *cls) continue;
            x.push_back(p.funding);
            y.push_back(p.leadership);
        }
        CorrelationRow row{std::move(label), static_cast<int>(x.size()), std::nullopt};
        try {
            if (x.size() >= 3) row.result = pearson(x, y);
        } catch (const std::invalid_argument&) {
            // zero variance: leave the row without a coefficient
        }
        return row;
    };
    out.rows.push_back(make_row("all", std::nullopt));
    for (int cls = 1; cls <= 3; ++cls) out.rows.push_back(make_row(std::to_string(cls), cls));
    return out;
}

}  // namespace leadix
