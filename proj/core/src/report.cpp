#include "leadix/report.hpp"

#include <array>
#include <cmath>
#include <nlohmann/json.hpp>

#include "leadix/csv.hpp"
#include "leadix/error.hpp"

namespace leadix {

namespace {

constexpr std::array<std::string_view, 12> kScorecardColumns = {
    "pi_id",      "start_year", "end_year",   "paper_count",        "scored",         "o_raw",
    "o_weighted", "t_equiv",    "efficiency", "leadership", "funding_leadership", "unscored_reason"};

std::string cell_text(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(double v) const { return csv::format_sig6(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
    };
    return std::visit(Visitor{}, c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
    struct Visitor {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(const std::string& s) const { return s; }
        nlohmann::ordered_json operator()(long long v) const { return v; }
        nlohmann::ordered_json operator()(double v) const { return std::stod(csv::format_sig6(v)); }
        nlohmann::ordered_json operator()(bool v) const { return v; }
    };
    return std::visit(Visitor{}, c);
}

Cell opt(const std::optional<double>& v) {
    if (!v) return std::monostate{};
    return *v;
}

ReportTable series(std::string name, std::string key, std::string value) {
    ReportTable t;
    t.name = std::move(name);
    t.delimiter = '\t';
    t.columns = {std::move(key), std::move(value)};
    return t;
}

}  // namespace

std::string_view to_string(OutputFormat f) noexcept { return f == OutputFormat::csv ? "csv" : "json"; }

std::optional<OutputFormat> parse_output_format(std::string_view s) noexcept {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    return std::nullopt;
}

std::string ReportTable::file_name(OutputFormat format) const {
    if (format == OutputFormat::json) return name + ".json";
    return name + (delimiter == '\t' ? ".tsv" : ".csv");
}

std::string ReportTable::render(OutputFormat format) const {
    if (format == OutputFormat::json) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = cell_json(row.at(i));
            arr.push_back(std::move(obj));
        }
        return arr.dump(2) + "\n";
    }
    std::string out = csv::join(columns, delimiter) + "\n";
    std::vector<std::string> fields;
    for (const auto& row : rows) {
        fields.clear();
        for (const auto& c : row) fields.push_back(cell_text(c));
        out += csv::join(fields, delimiter);
        out += '\n';
    }
    return out;
}

ReportTable scorecard_table(std::span<const ScoreCard> cards) {
    ReportTable t;
    t.name = "scorecards";
    t.columns.assign(kScorecardColumns.begin(), kScorecardColumns.end());
    for (const auto& c : cards) {
        std::vector<Cell> row{c.pi_id, static_cast<long long>(c.period.start_year),
                              static_cast<long long>(c.period.end_year), static_cast<long long>(c.paper_count),
                              c.scored()};
        if (c.metrics) {
            row.insert(row.end(), {c.metrics->o_raw, c.metrics->o_weighted, c.metrics->t_equiv, c.metrics->efficiency,
                                   c.metrics->leadership});
        } else {
            row.insert(row.end(), 5, std::monostate{});
        }
        row.push_back(opt(c.funding_leadership));
        row.push_back(c.unscored_reason.empty() ? Cell{} : Cell{c.unscored_reason});
        t.rows.push_back(std::move(row));
    }
    return t;
}

ReportTable cohort_table(const CohortReport& report) {
    ReportTable t;
    t.name = "cohort_" + std::string(to_string(report.grouping));
    t.columns = {"group", "n", "metric", "mean", "sd", "p_value", "mark"};
    for (const auto& g : report.groups) {
        for (const auto& m : g.metrics) {
            t.rows.push_back({g.key, static_cast<long long>(g.n), std::string(to_string(m.metric)), m.mean, m.sd,
                              opt(m.p_value), m.p_value ? Cell{std::string(stars(m.mark))} : Cell{}});
        }
    }
    return t;
}

ReportTable cohort_counts_table(const CohortReport& report) {
    ReportTable t;
    t.name = "cohort_" + std::string(to_string(report.grouping)) + "_counts";
    t.columns = {"category", "count"};
    long long grouped = 0;
    for (const auto& g : report.groups) grouped += g.n;
    t.rows.push_back({std::string("grouped"), grouped});
    t.rows.push_back({std::string("unscored"), static_cast<long long>(report.excluded_unscored)});
    t.rows.push_back({std::string("unknown_group"), static_cast<long long>(report.excluded_unknown_group)});
    return t;
}

ReportTable pairwise_table(const PairwiseMatrix& matrix, Grouping grouping) {
    ReportTable t;
    t.name = "pairwise_" + std::string(to_string(grouping)) + "_" + std::string(to_string(matrix.metric));
    t.columns = {"group_a", "group_b", "p_value"};
    for (std::size_t i = 0; i < matrix.keys.size(); ++i) {
        for (std::size_t j = i + 1; j < matrix.keys.size(); ++j) {
            t.rows.push_back({matrix.keys[i], matrix.keys[j], opt(matrix.p_values[i][j])});
        }
    }
    return t;
}

std::vector<ReportTable> bin_tables(const BinSeries& bins) {
    auto mean = series("bins_leadership", "center", "mean_leadership");
    auto count = series("bins_count", "center", "count");
    for (const auto& b : bins.bins) {
        mean.rows.push_back({b.center, b.mean_leadership});
        count.rows.push_back({b.center, static_cast<long long>(b.count)});
    }
    ReportTable excluded;
    excluded.name = "bins_excluded";
    excluded.delimiter = '\t';
    excluded.columns = {"t", "leadership", "reason"};
    for (const auto& e : bins.excluded) excluded.rows.push_back({e.t, e.leadership, e.reason});
    return {std::move(mean), std::move(count), std::move(excluded)};
}

std::vector<ReportTable> trend_tables(const TrendSeries& trend) {
    auto l = series("trend_leadership", "year", "leadership");
    auto o = series("trend_output", "year", "output");
    auto e = series("trend_efficiency", "year", "efficiency");
    auto t = series("trend_time", "year", "time");
    auto n = series("trend_count", "year", "scored");
    for (const auto& p : trend.points) {
        const auto year = static_cast<long long>(p.year);
        if (p.means) {
            l.rows.push_back({year, p.means->leadership});
            o.rows.push_back({year, p.means->output});
            e.rows.push_back({year, p.means->efficiency});
            t.rows.push_back({year, p.means->time});
        } else {
            for (auto* s : {&l, &o, &e, &t}) s->rows.push_back({year, std::monostate{}});
        }
        n.rows.push_back({year, static_cast<long long>(p.scored)});
    }
    return {std::move(l), std::move(o), std::move(e), std::move(t), std::move(n)};
}

std::vector<ReportTable> correlation_tables(const FundingCorrelation& corr) {
    ReportTable rows;
    rows.name = "correlation";
    rows.columns = {"group", "currency", "n", "r", "p_value", "mark"};
    for (const auto& r : corr.rows) {
        if (r.result) {
            rows.rows.push_back({r.group, corr.currency, static_cast<long long>(r.n), r.result->r,
                                 r.result->p_two_sided, std::string(stars(significance_of(r.result->p_two_sided)))});
        } else {
            rows.rows.push_back({r.group, corr.currency, static_cast<long long>(r.n), std::monostate{}, std::monostate{},
                                 std::monostate{}});
        }
    }
    ReportTable scatter;
    scatter.name = "funding_scatter";
    scatter.columns = {"pi_id", "funding", "leadership", "class"};
    for (const auto& p : corr.points) {
        scatter.rows.push_back({p.pi_id, p.funding, p.leadership, static_cast<long long>(p.cohort_class)});
    }
    return {std::move(rows), std::move(scatter)};
}

std::vector<ReportTable> report_tables(const ReportBundle& bundle) {
    std::vector<ReportTable> out;
    if (bundle.scorecards) out.push_back(scorecard_table(*bundle.scorecards));
    if (bundle.cohort) {
        out.push_back(cohort_table(*bundle.cohort));
        out.push_back(cohort_counts_table(*bundle.cohort));
        for (const auto& m : bundle.pairwise) out.push_back(pairwise_table(m, bundle.cohort->grouping));
    }
    auto append = [&](std::vector<ReportTable> tables) {
        for (auto& t : tables) out.push_back(std::move(t));
    };
    if (bundle.bins) append(bin_tables(*bundle.bins));
    if (bundle.trend) append(trend_tables(*bundle.trend));
    if (bundle.correlation) append(correlation_tables(*bundle.correlation));
    return out;
}

std::vector<std::filesystem::path> emit_reports(const ReportBundle& bundle, const std::filesystem::path& dir,
                                                OutputFormat format) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
    std::vector<std::filesystem::path> written;
    for (const auto& table : report_tables(bundle)) {
        const auto path = dir / table.file_name(format);
        csv::write_file(path, table.render(format));
        written.push_back(path);
    }
    return written;
}

// ---------------------------------------------------------------------------

std::vector<ScoreCard> parse_scorecards(std::string_view text, std::string_view source) {
    const auto rows = csv::parse_with_header(text, source, kScorecardColumns);
    std::vector<ScoreCard> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        ScoreCard c;
        c.pi_id = row.fields[0];
        if (c.pi_id.empty()) throw ParseError(std::string(source), row.line, "pi_id", "must not be empty");
        c.period.start_year = static_cast<int>(csv::parse_int(row, 1, "start_year", source));
        c.period.end_year = static_cast<int>(csv::parse_int(row, 2, "end_year", source));
        c.paper_count = static_cast<int>(csv::parse_int(row, 3, "paper_count", source));
        if (csv::parse_bool(row, 4, "scored", source)) {
            CardMetrics m;
            m.o_raw = csv::parse_double(row, 5, "o_raw", source);
            m.o_weighted = csv::parse_double(row, 6, "o_weighted", source);
            m.t_equiv = csv::parse_double(row, 7, "t_equiv", source);
            m.efficiency = csv::parse_double(row, 8, "efficiency", source);
            m.leadership = csv::parse_double(row, 9, "leadership", source);
            c.metrics = m;
        }
        c.funding_leadership = csv::parse_optional_double(row, 10, "funding_leadership", source);
        c.unscored_reason = row.fields[11];
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<ScoreCard> read_scorecards(const std::filesystem::path& path) {
    return parse_scorecards(csv::read_file(path), path.string());
}

BinSeries read_bin_series(const std::filesystem::path& dir, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("bin step must be positive");
    constexpr std::array<std::string_view, 2> mean_header = {"center", "mean_leadership"};
    constexpr std::array<std::string_view, 2> count_header = {"center", "count"};
    constexpr std::array<std::string_view, 3> excluded_header = {"t", "leadership", "reason"};
    const auto mean_path = (dir / "bins_leadership.tsv").string();
    const auto count_path = (dir / "bins_count.tsv").string();
    const auto excluded_path = (dir / "bins_excluded.tsv").string();
    const auto means = csv::parse_with_header(csv::read_file(mean_path), mean_path, mean_header, '\t');
    const auto counts = csv::parse_with_header(csv::read_file(count_path), count_path, count_header, '\t');
    const auto excluded = csv::parse_with_header(csv::read_file(excluded_path), excluded_path, excluded_header, '\t');
    if (means.size() != counts.size()) throw ParseError(count_path, 0, "", "bin files disagree on the number of bins");

    BinSeries out;
    out.step = step;
    for (std::size_t i = 0; i < means.size(); ++i) {
        Bin b;
        b.center = csv::parse_double(means[i], 0, "center", mean_path);
        if (csv::parse_double(counts[i], 0, "center", count_path) != b.center) {
            throw ParseError(count_path, counts[i].line, "center", "does not match bins_leadership.tsv");
        }
        b.index = static_cast<long long>(std::llround(b.center / step));
        b.mean_leadership = csv::parse_double(means[i], 1, "mean_leadership", mean_path);
        b.count = static_cast<int>(csv::parse_int(counts[i], 1, "count", count_path));
        out.bins.push_back(b);
    }
    for (const auto& row : excluded) {
        out.excluded.push_back({csv::parse_double(row, 0, "t", excluded_path),
                                csv::parse_double(row, 1, "leadership", excluded_path), row.fields[2]});
    }
    return out;
}

}  // namespace leadix
