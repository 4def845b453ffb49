#pragma once

// Runs the CLI over the committed golden fixture and compares every report
// file with the committed expectation byte for byte.

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "leadix/csv.hpp"

namespace leadix::gen {

struct GoldenFile {
    std::string name;
    bool matches = false;
    std::string problem;
};

struct GoldenRun {
    std::vector<GoldenFile> files;
    std::string error;  // set when a command failed

    bool passed() const {
        if (!error.empty() || files.empty()) return false;
        for (const auto& f : files) {
            if (!f.matches) return false;
        }
        return true;
    }
};

inline std::filesystem::path golden_dir() { return LEADIX_GOLDEN_DIR; }

/// Regenerates the fixture with the synth settings it was made with.
inline std::vector<std::string> golden_synth_args(const std::filesystem::path& out) {
    return {"synth", "--out", out.string(), "--pis", "200", "--papers", "3000", "--journals", "60", "--seed", "42"};
}

inline GoldenRun run_golden(const std::filesystem::path& work) {
    namespace fs = std::filesystem;
    const auto fixture = (golden_dir() / "fixture").string();
    const auto out = work.string();
    fs::remove_all(work);
    fs::create_directories(work);

    const std::vector<std::vector<std::string>> commands{
        {"toughness-build", "--citations", fixture + "/journal_citations.csv", "--out", out + "/toughness_table.csv"},
        {"score", "--data", fixture, "--out", out, "--threads", "4"},
        {"report-cohort", "--data", fixture, "--out", out},
        {"report-bins", "--data", fixture, "--out", out, "--max-t", "20", "--exclude-t", "36", "--exclude-t", "50",
         "--exclude-t", "84.5"},
        {"report-trend", "--data", fixture, "--out", out, "--country", "CN"},
    };
    GoldenRun run;
    for (const auto& args : commands) {
        std::ostringstream o, e;
        if (cli::run(args, o, e) != 0) {
            run.error = args[0] + " failed: " + e.str();
            return run;
        }
    }
    std::vector<fs::path> expected;
    for (const auto& entry : fs::directory_iterator(golden_dir() / "expected")) expected.push_back(entry.path());
    std::sort(expected.begin(), expected.end());
    for (const auto& path : expected) {
        GoldenFile f{path.filename().string(), false, ""};
        const auto produced = work / path.filename();
        if (!fs::exists(produced)) {
            f.problem = "not produced";
        } else if (csv::read_file(produced) != csv::read_file(path)) {
            f.problem = "content differs";
        } else {
            f.matches = true;
        }
        run.files.push_back(f);
    }
    return run;
}

}  // namespace leadix::gen
