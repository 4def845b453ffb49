#include "leadix/pipeline.hpp"

#include <algorithm>

#include "leadix/io.hpp"

namespace leadix {

void check_inputs_exist(const RunConfig& config) {
    std::vector<std::filesystem::path> paths{config.publications, config.journals, config.profiles};
    for (const auto& p : {config.grants, config.journal_citations, config.table}) {
        if (p) paths.push_back(*p);
    }
    for (const auto& p : paths) {
        if (!std::filesystem::exists(p)) throw Error("input file not found: " + p.string());
    }
}

LoadedDataset load_dataset(const RunConfig& config) {
    auto profiles = read_profiles(config.profiles);
    std::vector<std::string> unmatched;
    if (config.grants) unmatched = attach_funding(profiles, read_grants(*config.grants));
    return {validate_dataset(read_publications(config.publications), read_journals(config.journals),
                             std::move(profiles), config.if_fallback),
            std::move(unmatched)};
}

ToughnessTable load_table(const RunConfig& config) {
    if (config.table) return read_toughness_table(*config.table);
    if (!config.journal_citations) throw Error("no toughness table or journal citation corpus configured");
    const auto estimate = estimate_paper_counts(read_journal_citations(*config.journal_citations));
    std::vector<CorpusEntry> corpus;
    corpus.reserve(estimate.counts.size());
    for (const auto& c : estimate.counts) corpus.push_back({c.paper_count, c.impact_factor});
    return build_table(corpus, config.level_count, config.divisor_mode);
}

Period publication_span(const ValidatedDataset& dataset) {
    const auto& pubs = dataset.publications();
    if (pubs.empty()) return {0, 0};
    const auto [lo, hi] = std::minmax_element(pubs.begin(), pubs.end(), [](const auto& a, const auto& b) {
        return a.record.year < b.record.year;
    });
    return {lo->record.year, hi->record.year};
}

RunCounts count_run(const ValidatedDataset& dataset, const std::vector<ScoreCard>& cards) {
    RunCounts c;
    c.total_papers = dataset.publications().size();
    c.corresponding_papers = dataset.corresponding_count();
    c.investigators = cards.size();
    c.unscored = static_cast<std::size_t>(std::count_if(cards.begin(), cards.end(), [](const auto& k) {
        return !k.scored();
    }));
    return c;
}

std::string describe(const RunCounts& c) {
    return std::to_string(c.total_papers) + " papers, " + std::to_string(c.corresponding_papers) +
           " with the PI as corresponding author; " + std::to_string(c.investigators) + " investigators, " +
           std::to_string(c.unscored) + " unscored";
}

ScoredRun score_run(const RunConfig& config) {
    check_inputs_exist(config);
    ScoredRun run{load_dataset(config), load_table(config), {}, {}, {}};
    run.period = config.period.value_or(publication_span(run.loaded.dataset));
    run.cards = score_all(run.loaded.dataset, run.period, run.table, {config.scenario, true}, config.threads);
    run.counts = count_run(run.loaded.dataset, run.cards);
    return run;
}

}  // namespace leadix
