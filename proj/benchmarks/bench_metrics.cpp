#include <benchmark/benchmark.h>

#include "leadix/analysis.hpp"
#include "leadix/credit.hpp"
#include "leadix/metrics.hpp"
#include "leadix/synth.hpp"
#include "leadix/toughness.hpp"

using namespace leadix;

namespace {

struct Corpus {
    ValidatedDataset dataset;
    ToughnessTable table;
    Period period;
};

const Corpus& corpus() {
    static const Corpus c = [] {
        SynthConfig cfg;
        cfg.pi_count = 1000;
        cfg.paper_count = 20000;
        cfg.journal_count = 400;
        auto s = synth_corpus(cfg);
        std::vector<CorpusEntry> entries;
        for (const auto& e : estimate_paper_counts(s.journal_citations).counts) {
            entries.push_back({e.paper_count, e.impact_factor});
        }
        auto ds = validate_dataset(std::move(s.publications), std::move(s.journals), std::move(s.profiles));
        return Corpus{std::move(ds), build_table(entries), {cfg.start_year, cfg.end_year}};
    }();
    return c;
}

}  // namespace

static void BM_AIndex(benchmark::State& state) {
    int n = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(a_index(n, 1 + n / 2));
        n = n % 30 + 1;
    }
}
BENCHMARK(BM_AIndex);

static void BM_GroupSizeForCredit(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(group_size_for_credit(0.20, CreditScenario::ranked));
}
BENCHMARK(BM_GroupSizeForCredit);

static void BM_WeightLookup(benchmark::State& state) {
    const auto& t = corpus().table;
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(t.weight_of(x));
        x = x > 40.0 ? 0.0 : x + 0.37;
    }
}
BENCHMARK(BM_WeightLookup);

static void BM_ScoreAll(benchmark::State& state) {
    const auto& c = corpus();
    const auto threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(score_all(c.dataset, c.period, c.table, {}, threads));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(c.dataset.profiles().size()));
}
BENCHMARK(BM_ScoreAll)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_Trend(benchmark::State& state) {
    const auto& c = corpus();
    for (auto _ : state) benchmark::DoNotOptimize(trend(c.dataset, c.table, c.period));
}
BENCHMARK(BM_Trend)->Unit(benchmark::kMillisecond);

static void BM_BuildTable(benchmark::State& state) {
    std::vector<CorpusEntry> entries;
    for (int i = 0; i < state.range(0); ++i) entries.push_back({1 + i % 500, 0.01 * (i % 5000)});
    for (auto _ : state) benchmark::DoNotOptimize(build_table(entries));
}
BENCHMARK(BM_BuildTable)->Arg(1000)->Arg(100000);

BENCHMARK_MAIN();
