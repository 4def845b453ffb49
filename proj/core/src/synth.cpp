#include "leadix/synth.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "leadix/csv.hpp"

namespace leadix {

namespace {

class Draws {
public:
    explicit Draws(std::uint64_t seed) : engine_(seed) {}

    // [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
    // (0, 1]
    double uniform_open() { return static_cast<double>((engine_() >> 11) + 1) * 0x1p-53; }

    int between(int lo, int hi) {
        const auto span = static_cast<double>(hi - lo + 1);
        const int k = static_cast<int>(uniform() * span);
        return lo + (k > hi - lo ? hi - lo : k);
    }

    bool chance(double p) { return uniform() < p; }

    double normal() {
        const double r = std::sqrt(-2.0 * std::log(uniform_open()));
        return r * std::cos(2.0 * std::numbers::pi * uniform());
    }

private:
    std::mt19937_64 engine_;
};

std::string numbered(const char* prefix, int width, int k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%0*d", prefix, width, k);
    return buf;
}

double round_to(double v, double unit) { return std::nearbyint(v / unit) * unit; }

void check_fraction(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

SynthCorpus synth_corpus(const SynthConfig& cfg) {
    if (cfg.pi_count < 0 || cfg.paper_count < 0 || cfg.journal_count < 0) {
        throw std::invalid_argument("synthetic corpus sizes must be non-negative");
    }
    if (cfg.end_year < cfg.start_year) throw std::invalid_argument("synthetic year span is empty");
    if (cfg.paper_count > 0 && (cfg.pi_count == 0 || cfg.journal_count == 0)) {
        throw std::invalid_argument("papers need at least one PI and one journal");
    }
    if (cfg.max_authors < 1 || !(cfg.mean_extra_authors >= 0.0) || !(cfg.if_log_sd >= 0.0)) {
        throw std::invalid_argument("invalid author-count or impact-factor parameters");
    }
    check_fraction(cfg.corresponding_fraction, "corresponding_fraction");
    check_fraction(cfg.tie_fraction, "tie_fraction");
    check_fraction(cfg.china_fraction, "china_fraction");

    Draws rng(cfg.seed);
    SynthCorpus out;

    out.profiles.reserve(static_cast<std::size_t>(cfg.pi_count));
    for (int i = 0; i < cfg.pi_count; ++i) {
        InvestigatorProfile p;
        p.pi_id = numbered("PI", 5, i + 1);
        p.country = rng.chance(cfg.china_fraction) ? Country::china : Country::usa;
        p.cohort_class = rng.between(1, 3);
        const bool gender_known = !rng.chance(0.05);
        const bool male = rng.chance(0.8);
        if (gender_known) p.gender = male ? Gender::male : Gender::female;
        p.birth_year = rng.between(1950, 1985);
        p.rank = static_cast<AcademicRank>(rng.between(0, 2));
        p.funding_year = rng.between(cfg.start_year, cfg.end_year);
        out.profiles.push_back(std::move(p));
    }

    for (int j = 0; j < cfg.journal_count; ++j) {
        const auto name = numbered("J", 4, j + 1);
        const double base = cfg.if_log_mean + cfg.if_log_sd * rng.normal();
        for (int y = cfg.start_year; y <= cfg.end_year; ++y) {
            const double impact = std::max(0.001, round_to(std::exp(base + 0.05 * rng.normal()), 0.001));
            const int papers = rng.between(50, 1000);
            out.journals.push_back({name, y, impact});
            out.journal_citations.push_back({name, y, std::nearbyint(impact * papers), impact});
        }
    }

    out.publications.reserve(static_cast<std::size_t>(cfg.paper_count));
    for (int i = 0; i < cfg.paper_count; ++i) {
        PublicationRecord r;
        r.paper_id = numbered("P", 7, i + 1);
        const int pi = i < cfg.pi_count ? i : rng.between(0, cfg.pi_count - 1);
        r.pi_id = out.profiles[static_cast<std::size_t>(pi)].pi_id;
        r.year = rng.between(cfg.start_year, cfg.end_year);
        r.journal = numbered("J", 4, rng.between(1, cfg.journal_count));
        const double extra = std::floor(-std::log(rng.uniform_open()) * cfg.mean_extra_authors);
        r.author_count = 1 + static_cast<int>(std::min(extra, static_cast<double>(cfg.max_authors - 1)));
        const bool lead = rng.chance(0.6);
        const int pos = rng.between(1, r.author_count);
        r.credit_position = lead ? 1 : pos;
        const bool tie = rng.chance(cfg.tie_fraction);
        r.tie_span = tie && r.credit_position < r.author_count ? 2 : 1;
        r.is_corresponding = rng.chance(cfg.corresponding_fraction);
        out.publications.push_back(std::move(r));
    }

    for (const auto& p : out.profiles) {
        const bool cn = p.country == Country::china;
        const int rows = rng.between(1, 3);
        for (int k = 0; k < rows; ++k) {
            const int year = rng.between(cfg.start_year, cfg.end_year);
            const double amount = std::nearbyint(std::exp(std::log(cn ? 800000.0 : 400000.0) + 0.6 * rng.normal()));
            out.grants.push_back({p.pi_id, year, amount, cn ? "CNY" : "USD"});
        }
    }
    return out;
}

std::vector<std::filesystem::path> write_synth_corpus(const SynthConfig& config, const std::filesystem::path& dir) {
    const auto corpus = synth_corpus(config);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create directory '" + dir.string() + "': " + ec.message());

    std::vector<std::filesystem::path> written;
    auto put = [&](const char* name, const std::string& content) {
        written.push_back(dir / name);
        csv::write_file(written.back(), content);
    };
    put(kPublicationsFile, format_publications(corpus.publications));
    put(kJournalsFile, format_journals(corpus.journals));
    put(kProfilesFile, format_profiles(corpus.profiles));
    put(kGrantsFile, format_grants(corpus.grants));
    put(kJournalCitationsFile, format_journal_citations(corpus.journal_citations));
    return written;
}

}  // namespace leadix
