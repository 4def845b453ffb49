#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <thread>

#include "leadix/csv.hpp"
#include "leadix/io.hpp"
#include "leadix/pipeline.hpp"
#include "leadix/report.hpp"
#include "leadix/synth.hpp"

namespace leadix::cli {

namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kBadInput = 1;
constexpr int kUsage = 2;
constexpr std::size_t kMaxListedWarnings = 20;

// Raised for problems with the command line itself rather than the data.
struct UsageError : Error {
    using Error::Error;
};

// Flag values as typed; turned into a RunConfig once parsing is done.
struct Flags {
    std::string data_dir;
    std::string publications, journals, profiles, grants, citations, table, scorecards;
    std::optional<int> from, to;
    int levels = 10;
    std::string divisor = "geometric_sum";
    std::string scenario = "ranked";
    std::string if_fallback = "off";
    std::string out_dir = "out";
    std::string format = "csv";
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());

    // report-cohort
    std::string grouping = "class";
    std::string reference;
    bool all_pairwise = false;
    // report-trend
    std::string country;
    std::optional<int> cohort_class;
    // report-bins
    double step = 0.5;
    std::optional<double> max_t;
    std::vector<double> exclude_t;
    // correlate
    std::string currency;
    // toughness-build
    std::string table_out;
    // synth
    SynthConfig synth;
};

std::string pick(const std::string& flag, const std::string& data_dir, const char* file, bool only_if_present) {
    if (!flag.empty() || data_dir.empty()) return flag;
    const auto p = fs::path(data_dir) / file;
    if (only_if_present && !fs::exists(p)) return {};
    return p.string();
}

template <class T, class Parse>
T parse_enum(const std::string& text, Parse parse, const char* what) {
    if (auto v = parse(text)) return *v;
    throw UsageError("unknown " + std::string(what) + " '" + text + "'");
}

RunConfig run_config(const Flags& f) {
    RunConfig c;
    c.publications = pick(f.publications, f.data_dir, kPublicationsFile, false);
    c.journals = pick(f.journals, f.data_dir, kJournalsFile, false);
    c.profiles = pick(f.profiles, f.data_dir, kProfilesFile, false);
    if (auto g = pick(f.grants, f.data_dir, kGrantsFile, true); !g.empty()) c.grants = g;
    if (auto j = pick(f.citations, f.data_dir, kJournalCitationsFile, true); !j.empty()) c.journal_citations = j;
    if (!f.table.empty()) c.table = f.table;
    for (const auto* p : {&c.publications, &c.journals, &c.profiles}) {
        if (p->empty()) throw UsageError("--publications, --journals and --profiles (or --data) are required");
    }
    try {
        check_inputs_exist(c);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }

    if (f.from || f.to) {
        if (!f.from || !f.to) throw UsageError("--from and --to must be given together");
        if (*f.to < *f.from) throw UsageError("--to is earlier than --from");
        c.period = Period{*f.from, *f.to};
    }
    c.level_count = f.levels;
    c.divisor_mode = parse_enum<DivisorMode>(f.divisor, parse_divisor_mode, "divisor mode");
    c.scenario = parse_enum<CreditScenario>(f.scenario, parse_credit_scenario, "credit scenario");
    c.if_fallback = parse_enum<IfFallback>(f.if_fallback, parse_if_fallback, "IF fallback policy");
    c.bins.step = f.step;
    c.bins.max_t = f.max_t;
    c.bins.exclude_t = f.exclude_t;
    c.out_dir = f.out_dir;
    c.format = parse_enum<OutputFormat>(f.format, parse_output_format, "output format");
    c.threads = f.threads;
    return c;
}

void add_data_options(CLI::App& cmd, Flags& f) {
    cmd.add_option("--data", f.data_dir, "Directory holding the standard CSV file names");
    cmd.add_option("--publications", f.publications, "Publications CSV");
    cmd.add_option("--journals", f.journals, "Journal impact factor CSV");
    cmd.add_option("--profiles", f.profiles, "Investigator profile CSV");
    cmd.add_option("--grants", f.grants, "Grant CSV (optional)");
    cmd.add_option("--if-fallback", f.if_fallback, "Missing IF policy: off | nearest-prior-year")
        ->capture_default_str();
}

void add_scoring_options(CLI::App& cmd, Flags& f) {
    add_data_options(cmd, f);
    cmd.add_option("--citations", f.citations, "Journal citation corpus for building the toughness table");
    cmd.add_option("--table", f.table, "Prebuilt toughness table (wins over --citations)");
    cmd.add_option("--from", f.from, "First year of the scoring period");
    cmd.add_option("--to", f.to, "Last year of the scoring period");
    cmd.add_option("--levels", f.levels, "Toughness levels")->capture_default_str()->check(CLI::Range(1, 40));
    cmd.add_option("--divisor", f.divisor, "Top-level size rule: geometric_sum | half_pow")->capture_default_str();
    cmd.add_option("--scenario", f.scenario, "Credit scenario: ranked | tied")->capture_default_str();
    cmd.add_option("--threads", f.threads, "Scoring threads")->capture_default_str()->check(CLI::Range(1u, 1024u));
}

void add_output_options(CLI::App& cmd, Flags& f) {
    cmd.add_option("--out", f.out_dir, "Output directory")->capture_default_str();
    cmd.add_option("--format", f.format, "Report format: csv | json")->capture_default_str();
}

void add_card_source(CLI::App& cmd, Flags& f) {
    cmd.add_option("--scorecards", f.scorecards, "Read scorecards.csv instead of scoring the data");
}

void log_warnings(const ValidatedDataset& ds, std::ostream& err) {
    const auto& w = ds.warnings();
    for (std::size_t i = 0; i < w.size() && i < kMaxListedWarnings; ++i) {
        err << "warning: " << w[i].code << ": " << w[i].message << '\n';
    }
    if (w.size() > kMaxListedWarnings) err << "warning: ... and " << w.size() - kMaxListedWarnings << " more\n";
}

void log_written(const std::vector<fs::path>& paths, std::ostream& out) {
    for (const auto& p : paths) out << p.string() << '\n';
}

ScoredRun scored(const Flags& f, std::ostream& err) {
    auto run = score_run(run_config(f));
    log_warnings(run.loaded.dataset, err);
    for (const auto& id : run.loaded.unmatched_grant_ids) err << "warning: grants for unknown pi_id '" << id << "'\n";
    err << "leadix: period " << run.period.start_year << "-" << run.period.end_year << "; " << describe(run.counts)
        << '\n';
    return run;
}

// Scorecards and profiles for the report commands: read from files when
// --scorecards is given, otherwise scored from the data.
struct CardsAndProfiles {
    std::vector<ScoreCard> cards;
    std::vector<InvestigatorProfile> profiles;
};

CardsAndProfiles cards_and_profiles(const Flags& f, std::ostream& err) {
    if (f.scorecards.empty()) {
        auto run = scored(f, err);
        return {std::move(run.cards), run.loaded.dataset.profiles()};
    }
    const auto profiles_path = pick(f.profiles, f.data_dir, kProfilesFile, false);
    if (profiles_path.empty()) throw UsageError("--profiles (or --data) is required with --scorecards");
    for (const auto& p : {fs::path(f.scorecards), fs::path(profiles_path)}) {
        if (!fs::exists(p)) throw UsageError("input file not found: " + p.string());
    }
    CardsAndProfiles r{read_scorecards(f.scorecards), read_profiles(profiles_path)};
    const auto grants_path = pick(f.grants, f.data_dir, kGrantsFile, true);
    if (!grants_path.empty()) {
        if (!fs::exists(grants_path)) throw UsageError("input file not found: " + grants_path);
        for (const auto& id : attach_funding(r.profiles, read_grants(grants_path))) {
            err << "warning: grants for unknown pi_id '" << id << "'\n";
        }
    }
    std::sort(r.profiles.begin(), r.profiles.end(), [](const auto& a, const auto& b) { return a.pi_id < b.pi_id; });
    return r;
}

OutputFormat output_format(const Flags& f) {
    return parse_enum<OutputFormat>(f.format, parse_output_format, "output format");
}

int cmd_validate(const Flags& f, std::ostream& out, std::ostream& err) {
    auto cfg = run_config(f);
    const auto loaded = load_dataset(cfg);
    log_warnings(loaded.dataset, err);
    for (const auto& id : loaded.unmatched_grant_ids) err << "warning: grants for unknown pi_id '" << id << "'\n";
    out << "ok: " << loaded.dataset.publications().size() << " papers, " << loaded.dataset.corresponding_count()
        << " corresponding, " << loaded.dataset.journals().size() << " journal-years, "
        << loaded.dataset.profiles().size() << " investigators\n";
    return kOk;
}

int cmd_toughness_build(const Flags& f, std::ostream& out, std::ostream& err) {
    if (!fs::exists(f.citations)) throw UsageError("input file not found: " + f.citations);
    const auto estimate = estimate_paper_counts(read_journal_citations(f.citations));
    for (const auto& w : estimate.warnings) err << "warning: " << w.code << ": " << w.message << '\n';
    std::vector<CorpusEntry> corpus;
    corpus.reserve(estimate.counts.size());
    for (const auto& c : estimate.counts) corpus.push_back({c.paper_count, c.impact_factor});
    const auto mode = parse_enum<DivisorMode>(f.divisor, parse_divisor_mode, "divisor mode");
    const auto table = build_table(corpus, f.levels, mode);
    err << "leadix: " << table.total_papers() << " papers, top level holds " << table.base_count() << '\n';
    const auto text = format_toughness_table(table);
    if (f.table_out.empty()) {
        out << text;
    } else {
        csv::write_file(f.table_out, text);
        out << f.table_out << '\n';
    }
    return kOk;
}

int cmd_score(const Flags& f, std::ostream& out, std::ostream& err) {
    auto run = scored(f, err);
    ReportBundle bundle;
    bundle.scorecards = std::move(run.cards);
    log_written(emit_reports(bundle, f.out_dir, output_format(f)), out);
    return kOk;
}

int cmd_report_cohort(const Flags& f, std::ostream& out, std::ostream& err) {
    const auto grouping = parse_enum<Grouping>(f.grouping, parse_grouping, "grouping");
    const auto format = output_format(f);
    const auto data = cards_and_profiles(f, err);
    std::optional<std::string> reference;
    if (!f.reference.empty()) reference = f.reference;
    ReportBundle bundle;
    if (!reference) {
        // Default to the first group in display order, as in a class-1-versus-others table.
        const auto plain = cohort_report(data.profiles, data.cards, grouping);
        if (!plain.groups.empty()) reference = plain.groups.front().key;
    }
    bundle.cohort = cohort_report(data.profiles, data.cards, grouping, reference);
    err << "leadix: " << bundle.cohort->groups.size() << " groups; " << bundle.cohort->excluded_unscored
        << " unscored and " << bundle.cohort->excluded_unknown_group << " unknown-group investigators excluded\n";
    if (f.all_pairwise) {
        for (auto m : kAllMetrics) bundle.pairwise.push_back(pairwise_p_values(data.profiles, data.cards, grouping, m));
    } else {
        bundle.pairwise.push_back(pairwise_p_values(data.profiles, data.cards, grouping, Metric::leadership));
    }
    log_written(emit_reports(bundle, f.out_dir, format), out);
    return kOk;
}

int cmd_report_trend(const Flags& f, std::ostream& out, std::ostream& err) {
    const auto cfg = run_config(f);
    const auto loaded = load_dataset(cfg);
    log_warnings(loaded.dataset, err);
    const auto table = load_table(cfg);
    CohortFilter filter;
    if (!f.country.empty()) filter.country = parse_enum<Country>(f.country, parse_country, "country");
    filter.cohort_class = f.cohort_class;
    const auto span = cfg.period.value_or(publication_span(loaded.dataset));
    ReportBundle bundle;
    bundle.trend = trend(loaded.dataset, table, span, filter, {cfg.scenario, true});
    err << "leadix: trend " << span.start_year << "-" << span.end_year << '\n';
    log_written(emit_reports(bundle, cfg.out_dir, cfg.format), out);
    return kOk;
}

int cmd_report_bins(const Flags& f, std::ostream& out, std::ostream& err) {
    const auto format = output_format(f);
    const auto data = cards_and_profiles(f, err);
    BinOptions opts;
    opts.step = f.step;
    opts.max_t = f.max_t;
    opts.exclude_t = f.exclude_t;
    const auto samples = time_samples(data.cards);
    ReportBundle bundle;
    bundle.bins = bin_by_time(samples, opts);
    err << "leadix: " << samples.size() << " samples, " << bundle.bins->bins.size() << " bins, "
        << bundle.bins->excluded.size() << " excluded\n";
    log_written(emit_reports(bundle, f.out_dir, format), out);
    return kOk;
}

int cmd_correlate(const Flags& f, std::ostream& out, std::ostream& err) {
    const auto format = output_format(f);
    const auto data = cards_and_profiles(f, err);
    std::optional<std::string> currency;
    if (!f.currency.empty()) currency = f.currency;
    ReportBundle bundle;
    bundle.correlation = correlate_funding(data.profiles, data.cards, currency);
    err << "leadix: " << bundle.correlation->points.size() << " funded and scored investigators ("
        << bundle.correlation->currency << ")\n";
    log_written(emit_reports(bundle, f.out_dir, format), out);
    return kOk;
}

int cmd_synth(const Flags& f, std::ostream& out, std::ostream& err) {
    const auto written = write_synth_corpus(f.synth, f.out_dir);
    err << "leadix: " << f.synth.pi_count << " investigators, " << f.synth.paper_count << " papers, seed "
        << f.synth.seed << '\n';
    log_written(written, out);
    return kOk;
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return a == flag || a.rfind(flag + "=", 0) == 0;
    });
}

// Removes `--config FILE` from the arguments and appends the file's settings
// for every option not already given on the command line.
std::vector<std::string> with_config(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 == args.size()) throw CLI::ArgumentMismatch("--config needs a file name");
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            out.push_back(args[i]);
        }
    }
    if (path.empty()) return out;
    if (!fs::exists(path)) throw CLI::FileError::Missing(path);

    const auto given = out;
    for (const auto& item : CLI::ConfigTOML().from_file(path)) {
        if (item.name == "++" || item.name == "--") continue;  // section markers
        // Sectioned files may carry settings for several subcommands; keep ours.
        if (!item.parents.empty() && (item.parents.size() > 1 || item.parents[0] != out.front())) continue;
        const auto flag = "--" + item.name;
        if (has_flag(given, flag)) continue;
        if (item.inputs == std::vector<std::string>{"true"}) {
            out.push_back(flag);
        } else if (item.inputs != std::vector<std::string>{"false"}) {
            for (const auto& v : item.inputs) {
                out.push_back(flag);
                out.push_back(v);
            }
        }
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Leadership index scoring for principal investigators", "leadix"};
    app.require_subcommand(1);
    app.fallthrough(false);
    Flags f;

    auto* validate = app.add_subcommand("validate", "Check input files and report validation errors");
    add_data_options(*validate, f);

    auto* tb = app.add_subcommand("toughness-build", "Build a toughness table from a journal citation corpus");
    tb->add_option("--citations", f.citations, "Journal citation corpus CSV")->required();
    tb->add_option("--levels", f.levels, "Toughness levels")->capture_default_str()->check(CLI::Range(1, 40));
    tb->add_option("--divisor", f.divisor, "Top-level size rule: geometric_sum | half_pow")->capture_default_str();
    tb->add_option("--out", f.table_out, "Table file to write (default: standard output)");

    auto* score = app.add_subcommand("score", "Score every investigator and write scorecards");
    add_scoring_options(*score, f);
    add_output_options(*score, f);

    auto* cohort = app.add_subcommand("report-cohort", "Per-group means, SDs and significance marks");
    add_scoring_options(*cohort, f);
    add_output_options(*cohort, f);
    add_card_source(*cohort, f);
    cohort->add_option("--grouping", f.grouping, "class | gender | age_band | rank | country")->capture_default_str();
    cohort->add_option("--reference", f.reference, "Reference group for the marks (default: first group)");
    cohort->add_flag("--all-pairwise", f.all_pairwise, "Write pairwise p values for every metric");

    auto* tr = app.add_subcommand("report-trend", "Per-year mean L, O, E and T");
    add_scoring_options(*tr, f);
    add_output_options(*tr, f);
    tr->add_option("--country", f.country, "Restrict to CN, US or OTHER");
    tr->add_option("--class", f.cohort_class, "Restrict to one cohort class")->check(CLI::Range(1, 3));

    auto* bins = app.add_subcommand("report-bins", "Mean L per equivalent-time bin");
    add_scoring_options(*bins, f);
    add_output_options(*bins, f);
    add_card_source(*bins, f);
    bins->add_option("--step", f.step, "Bin width")->capture_default_str()->check(CLI::PositiveNumber);
    bins->add_option("--max-t", f.max_t, "Exclude samples with larger equivalent time");
    bins->add_option("--exclude-t", f.exclude_t, "Exclude samples with this equivalent time (repeatable)");

    auto* corr = app.add_subcommand("correlate", "Correlation between funding and leadership");
    add_scoring_options(*corr, f);
    add_output_options(*corr, f);
    add_card_source(*corr, f);
    corr->add_option("--currency", f.currency, "Currency to analyse when several are present");

    auto* synth = app.add_subcommand("synth", "Write a seeded synthetic dataset");
    synth->add_option("--out", f.out_dir, "Output directory")->capture_default_str();
    synth->add_option("--seed", f.synth.seed, "RNG seed")->capture_default_str();
    synth->add_option("--pis", f.synth.pi_count, "Investigators")->capture_default_str()->check(CLI::NonNegativeNumber);
    synth->add_option("--papers", f.synth.paper_count, "Papers")->capture_default_str()->check(CLI::NonNegativeNumber);
    synth->add_option("--journals", f.synth.journal_count, "Journals")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    synth->add_option("--start-year", f.synth.start_year, "First year")->capture_default_str();
    synth->add_option("--end-year", f.synth.end_year, "Last year")->capture_default_str();

    std::string config_path;  // consumed by with_config before parsing; declared for --help
    for (auto* sub : app.get_subcommands({})) {
        sub->add_option("--config", config_path, "INI/TOML file with option values; command-line flags win");
    }

    if (args.empty()) {
        err << app.help();
        return kUsage;
    }
    try {
        const auto merged = with_config(args);
        std::vector<std::string> reversed(merged.rbegin(), merged.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << '\n';
        err << "run 'leadix --help' for usage\n";
        return kUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(f, out, err);
        if (tb->parsed()) return cmd_toughness_build(f, out, err);
        if (score->parsed()) return cmd_score(f, out, err);
        if (cohort->parsed()) return cmd_report_cohort(f, out, err);
        if (tr->parsed()) return cmd_report_trend(f, out, err);
        if (bins->parsed()) return cmd_report_bins(f, out, err);
        if (corr->parsed()) return cmd_correlate(f, out, err);
        if (synth->parsed()) return cmd_synth(f, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ValidationError& e) {
        err << "validation failed with " << e.issues().size() << " error(s):\n";
        for (const auto& issue : e.issues()) err << "  " << issue.code << ": " << issue.message << '\n';
        return kBadInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kBadInput;
    }
    return kUsage;
}

}  // namespace leadix::cli
