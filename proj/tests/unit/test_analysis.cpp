#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "gen.hpp"
#include "leadix/analysis.hpp"
#include "reference.hpp"

using namespace leadix;
using leadix::gen::reference;

namespace {

InvestigatorProfile profile(std::string id, int cls, Country country = Country::china) {
    InvestigatorProfile p;
    p.pi_id = std::move(id);
    p.cohort_class = cls;
    p.country = country;
    return p;
}

// A card whose every metric equals `v`.
ScoreCard card(std::string id, double v) {
    ScoreCard c;
    c.pi_id = std::move(id);
    c.paper_count = 1;
    c.metrics = CardMetrics{v, v, v, v, v};
    return c;
}

ScoreCard unscored(std::string id) {
    ScoreCard c;
    c.pi_id = std::move(id);
    c.unscored_reason = "no_papers";
    return c;
}

// Oracle: scan every multiple in range, ties to the larger one.
long long brute_nearest(double t, double step) {
    long long best = 0;
    double best_d = INFINITY;
    for (long long k = -2; k <= static_cast<long long>(100.0 / step) + 2; ++k) {
        const double d = std::abs(t - static_cast<double>(k) * step);
        if (d <= best_d) {
            best = k;
            best_d = d;
        }
    }
    return best;
}

}  // namespace

TEST(Binning, NearestHalfStep) {
    EXPECT_EQ(nearest_step_index(3.74, 0.5), 7);
    EXPECT_EQ(nearest_step_index(3.75, 0.5), 8);
    EXPECT_EQ(nearest_step_index(3.76, 0.5), 8);
    EXPECT_EQ(nearest_step_index(1.0, 0.5), 2);
    EXPECT_EQ(nearest_step_index(1.25, 0.5), 3);
    EXPECT_EQ(nearest_step_index(0.2, 0.5), 0);
    EXPECT_THROW(nearest_step_index(1.0, 0.0), std::invalid_argument);
}

TEST(Binning, SweepAgainstBruteForce) {
    gen::Engine g(77);
    for (int i = 0; i < 10'000; ++i) {
        // Every fourth sample sits exactly on a midpoint.
        const double t = i % 4 == 0 ? 0.25 + 0.5 * static_cast<double>(gen::uniform_int(g, 0, 180))
                                    : gen::uniform(g, 0.0, 90.0);
        ASSERT_EQ(nearest_step_index(t, 0.5), brute_nearest(t, 0.5)) << t;
    }
    for (int i = 0; i < 2000; ++i) {
        const double t = gen::uniform(g, 0.0, 90.0);
        ASSERT_EQ(nearest_step_index(t, 2.0), brute_nearest(t, 2.0)) << t;
    }
}

TEST(Binning, MeansAndCounts) {
    const std::vector<TimeSample> s{{1.1, 2.0}, {0.9, 4.0}, {3.74, 10.0}, {3.75, 7.0}, {4.2, 9.0}};
    const auto series = bin_by_time(s);
    ASSERT_EQ(series.bins.size(), 3u);
    EXPECT_EQ(series.bins[0], (Bin{2, 1.0, 3.0, 2}));
    EXPECT_EQ(series.bins[1], (Bin{7, 3.5, 10.0, 1}));
    EXPECT_EQ(series.bins[2], (Bin{8, 4.0, 8.0, 2}));
    EXPECT_TRUE(series.excluded.empty());
}

TEST(Binning, OutliersExcluded) {
    const std::vector<TimeSample> s{{84.5, 1.0}, {36.0, 2.0}, {50.0, 3.0}, {36.2, 4.0}, {2.0, 5.0}, {25.0, 6.0}};
    BinOptions opt;
    opt.exclude_t = {36.0, 50.0, 84.5};
    auto series = bin_by_time(s, opt);
    ASSERT_EQ(series.excluded.size(), 3u);
    EXPECT_EQ(series.excluded[0], (ExcludedSample{36.0, 2.0, "excluded_value"}));
    EXPECT_EQ(series.excluded[1].t, 50.0);
    EXPECT_EQ(series.excluded[2].t, 84.5);
    EXPECT_EQ(series.bins.size(), 3u);

    opt.max_t = 20.0;
    series = bin_by_time(s, opt);
    ASSERT_EQ(series.excluded.size(), 5u);
    EXPECT_EQ(series.excluded[0], (ExcludedSample{25.0, 6.0, "above_max_t"}));
    EXPECT_EQ(series.excluded[2], (ExcludedSample{36.2, 4.0, "above_max_t"}));
    ASSERT_EQ(series.bins.size(), 1u);
    EXPECT_EQ(series.bins[0].center, 2.0);
}

TEST(Binning, PartitionsEverySample) {
    gen::Engine g(12);
    for (int run = 0; run < 200; ++run) {
        std::vector<TimeSample> s(static_cast<std::size_t>(gen::uniform_int(g, 0, 300)));
        for (auto& x : s) x = {1.0 + std::round(gen::uniform(g, 0.0, 60.0) * 4) / 4, gen::uniform(g, 0.0, 100.0)};
        BinOptions opt;
        opt.step = run % 2 ? 0.5 : 1.0;
        opt.exclude_t = {36.0, 50.0};
        if (run % 3 == 0) opt.max_t = 30.0;
        const auto series = bin_by_time(s, opt);
        int counted = static_cast<int>(series.excluded.size());
        double weighted = 0.0;
        for (const auto& b : series.bins) {
            counted += b.count;
            weighted += b.mean_leadership * b.count;
            EXPECT_EQ(b.center, static_cast<double>(b.index) * opt.step);
        }
        double kept = 0.0;
        for (const auto& x : s) kept += x.leadership;
        for (const auto& e : series.excluded) kept -= e.leadership;
        EXPECT_EQ(counted, static_cast<int>(s.size()));
        EXPECT_NEAR(weighted, kept, 1e-8 * std::max(1.0, kept));
        EXPECT_TRUE(std::is_sorted(series.bins.begin(), series.bins.end(),
                                   [](const Bin& a, const Bin& b) { return a.center < b.center; }));
    }
}

TEST(Binning, TimeSamplesSkipUnscored) {
    const std::vector<ScoreCard> cards{card("a", 2.0), unscored("b")};
    const auto s = time_samples(cards);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0], (TimeSample{2.0, 2.0}));
}

TEST(Cohort, AgeBands) {
    EXPECT_EQ(age_band(35), "Under 36");
    EXPECT_EQ(age_band(36), "36-40");
    EXPECT_EQ(age_band(40), "36-40");
    EXPECT_EQ(age_band(41), "41-45");
    EXPECT_EQ(age_band(60), "56-60");
    EXPECT_EQ(age_band(61), "Over 60");
    auto p = profile("a", 1);
    p.birth_year = 1974;
    p.funding_year = 2010;
    EXPECT_EQ(group_key(p, Grouping::age_band), "36-40");
    p.funding_year.reset();
    EXPECT_FALSE(group_key(p, Grouping::age_band));
    EXPECT_FALSE(group_key(p, Grouping::gender));
    EXPECT_EQ(group_key(p, Grouping::cohort_class), "1");
    EXPECT_EQ(group_key(p, Grouping::country), "CN");
}

TEST(Cohort, MeansSdsAndCounts) {
    const std::vector<InvestigatorProfile> ps{profile("a", 1), profile("b", 1), profile("c", 2), profile("d", 2),
                                              profile("e", 3), profile("x", 2)};
    const std::vector<ScoreCard> cards{card("a", 1.0), card("b", 3.0), card("c", 10.0),
                                       card("d", 12.0), unscored("e"),  card("ghost", 5.0)};
    const auto r = cohort_report(ps, cards, Grouping::cohort_class, "1");
    ASSERT_EQ(r.groups.size(), 2u);
    EXPECT_EQ(r.groups[0].key, "1");
    EXPECT_EQ(r.groups[0].n, 2);
    EXPECT_DOUBLE_EQ(r.groups[0].metrics[4].mean, 2.0);
    EXPECT_DOUBLE_EQ(r.groups[0].metrics[4].sd, std::sqrt(2.0));
    EXPECT_FALSE(r.groups[0].metrics[4].p_value);
    ASSERT_TRUE(r.groups[1].metrics[4].p_value);
    EXPECT_EQ(r.groups[1].metrics[4].mark, significance_of(*r.groups[1].metrics[4].p_value));
    EXPECT_EQ(r.excluded_unscored, 1);
    EXPECT_EQ(r.excluded_unknown_group, 1);
    int n = r.excluded_unscored + r.excluded_unknown_group;
    for (const auto& gsum : r.groups) n += gsum.n;
    EXPECT_EQ(n, static_cast<int>(cards.size()));
}

TEST(Cohort, SingleGroupHasNoMarks) {
    const std::vector<InvestigatorProfile> ps{profile("a", 2), profile("b", 2), profile("c", 2)};
    const std::vector<ScoreCard> cards{card("a", 1.0), card("b", 30.0), card("c", 7.0)};
    const auto r = cohort_report(ps, cards, Grouping::cohort_class, "2");
    ASSERT_EQ(r.groups.size(), 1u);
    for (const auto& m : r.groups[0].metrics) {
        EXPECT_FALSE(m.p_value);
        EXPECT_EQ(m.mark, Significance::none);
    }
}

TEST(Cohort, SameDistributionFixtureIsNotSignificant) {
    const auto& fx = reference()["same_distribution"];
    const auto a = fx["a"].get<std::vector<double>>(), b = fx["b"].get<std::vector<double>>();
    std::vector<InvestigatorProfile> ps;
    std::vector<ScoreCard> cards;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ps.push_back(profile("a" + std::to_string(i), 1));
        cards.push_back(card(ps.back().pi_id, a[i]));
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        ps.push_back(profile("b" + std::to_string(i), 2));
        cards.push_back(card(ps.back().pi_id, b[i]));
    }
    const auto r = cohort_report(ps, cards, Grouping::cohort_class, "1");
    ASSERT_EQ(r.groups.size(), 2u);
    for (const auto& m : r.groups[1].metrics) {
        ASSERT_TRUE(m.p_value);
        EXPECT_GT(*m.p_value, 0.05);
        EXPECT_NEAR(*m.p_value, fx["p"].get<double>(), 1e-6);
        EXPECT_EQ(m.mark, Significance::none);
    }
}

TEST(Cohort, FalsePositiveRateNearNominal) {
    gen::Engine g(31);
    std::normal_distribution<double> normal(50.0, 12.0);
    int hits = 0;
    const int runs = 2000;
    for (int run = 0; run < runs; ++run) {
        std::vector<double> a(30), b(30);
        for (auto& v : a) v = normal(g);
        for (auto& v : b) v = normal(g);
        if (welch_t_test(a, b).p_two_sided < 0.05) ++hits;
    }
    const double rate = static_cast<double>(hits) / runs;
    EXPECT_GT(rate, 0.03);
    EXPECT_LT(rate, 0.07);
}

TEST(Cohort, GroupOrderFollowsLabels) {
    std::vector<InvestigatorProfile> ps{profile("a", 3), profile("b", 1), profile("c", 2)};
    ps[0].rank = AcademicRank::assist_professor;
    ps[1].rank = AcademicRank::professor;
    const std::vector<ScoreCard> cards{card("a", 1.0), card("b", 2.0), card("c", 3.0)};
    auto r = cohort_report(ps, cards, Grouping::cohort_class);
    ASSERT_EQ(r.groups.size(), 3u);
    EXPECT_EQ(r.groups[0].key, "1");
    EXPECT_EQ(r.groups[2].key, "3");
    r = cohort_report(ps, cards, Grouping::rank);
    ASSERT_EQ(r.groups.size(), 2u);
    EXPECT_EQ(r.groups[0].key, to_string(AcademicRank::professor));
    EXPECT_EQ(r.excluded_unknown_group, 1);
}

TEST(Cohort, PairwiseMatrixIsSymmetric) {
    std::vector<InvestigatorProfile> ps;
    std::vector<ScoreCard> cards;
    gen::Engine g(4);
    for (int i = 0; i < 30; ++i) {
        ps.push_back(profile("p" + std::to_string(i), 1 + i % 3));
        cards.push_back(card(ps.back().pi_id, gen::uniform(g, 0.0, 10.0) + (i % 3)));
    }
    ps.push_back(profile("lonely", 4));
    ps.back().cohort_class = 1;
    const auto m = pairwise_p_values(ps, cards, Grouping::cohort_class, Metric::leadership);
    ASSERT_EQ(m.keys, (std::vector<std::string>{"1", "2", "3"}));
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_FALSE(m.p_values[i][i]);
        for (std::size_t j = 0; j < 3; ++j) {
            if (i != j) EXPECT_EQ(m.p_values[i][j], m.p_values[j][i]);
        }
    }
}

TEST(Correlation, SingleCurrencyAndClasses) {
    std::vector<InvestigatorProfile> ps;
    std::vector<ScoreCard> cards;
    for (int i = 0; i < 9; ++i) {
        ps.push_back(profile("p" + std::to_string(i), 1 + i % 3));
        ps.back().total_funding = Funding{100.0 * (i + 1), "USD"};
        cards.push_back(card(ps.back().pi_id, 2.0 * (i + 1) + 1.0));
    }
    ps[0].total_funding.reset();
    cards.push_back(unscored("nobody"));
    const auto c = correlate_funding(ps, cards);
    EXPECT_EQ(c.currency, "USD");
    ASSERT_EQ(c.points.size(), 8u);
    ASSERT_EQ(c.rows.size(), 4u);
    EXPECT_EQ(c.rows[0].group, "all");
    EXPECT_EQ(c.rows[0].n, 8);
    EXPECT_NEAR(c.rows[0].result->r, 1.0, 1e-12);
    EXPECT_EQ(c.rows[1].n, 2);
    EXPECT_FALSE(c.rows[1].result);
    EXPECT_EQ(c.rows[2].n, 3);
    EXPECT_TRUE(c.rows[2].result);
}

TEST(Correlation, MixedCurrencies) {
    std::vector<InvestigatorProfile> ps{profile("a", 1), profile("b", 1)};
    ps[0].total_funding = Funding{1.0, "USD"};
    ps[1].total_funding = Funding{1.0, "CNY"};
    const std::vector<ScoreCard> cards{card("a", 1.0), card("b", 2.0)};
    EXPECT_THROW(correlate_funding(ps, cards), std::invalid_argument);
    const auto c = correlate_funding(ps, cards, "CNY");
    ASSERT_EQ(c.points.size(), 1u);
    EXPECT_EQ(c.points[0].pi_id, "b");
}

namespace {

PublicationRecord pub(std::string id, std::string pi, int year, int n, int pos) {
    return {std::move(id), std::move(pi), year, "J", n, pos, 1, true};
}

}  // namespace

TEST(Trend, YearByYearMeans) {
    std::vector<PublicationRecord> pubs{pub("1", "a", 2010, 1, 1), pub("2", "b", 2010, 2, 1),
                                        pub("3", "a", 2012, 4, 1), pub("4", "c", 2012, 1, 1)};
    std::vector<JournalYearIF> js{{"J", 2010, 2.0}, {"J", 2012, 4.0}};
    const auto ds = validate_dataset(pubs, js, {profile("a", 1), profile("b", 2), profile("c", 1, Country::usa)});
    const auto flat = ToughnessTable::from_cutoffs(2, {1e9}, 1, 3, DivisorMode::geometric_sum);
    const auto all = trend(ds, flat, {2010, 2012});
    ASSERT_EQ(all.points.size(), 3u);
    EXPECT_EQ(all.points[0].scored, 2);
    EXPECT_EQ(all.points[1].scored, 0);
    EXPECT_FALSE(all.points[1].means);
    EXPECT_DOUBLE_EQ(all.points[0].means->output, 2.0);
    EXPECT_DOUBLE_EQ(all.points[0].means->time, (1.0 + 1.0 / 0.75) / 2);

    const auto cn = trend(ds, flat, {2010, 2012}, {Country::china, std::nullopt});
    EXPECT_EQ(cn.points[2].scored, 1);
    EXPECT_DOUBLE_EQ(cn.points[2].means->output, 4.0);
    const auto cls1 = trend(ds, flat, {2010, 2012}, {std::nullopt, 1});
    EXPECT_EQ(cls1.points[0].scored, 1);
    EXPECT_EQ(cls1.points[2].scored, 2);
    EXPECT_THROW(trend(ds, flat, {2012, 2010}), std::invalid_argument);
}

TEST(Enums, GroupingText) {
    for (auto g : {Grouping::cohort_class, Grouping::gender, Grouping::age_band, Grouping::rank, Grouping::country}) {
        EXPECT_EQ(parse_grouping(to_string(g)), g);
    }
    EXPECT_EQ(to_string(Grouping::cohort_class), "class");
    EXPECT_FALSE(parse_grouping("klass"));
}
