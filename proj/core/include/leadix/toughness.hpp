#pragma once

// Toughness weighting of journal impact factors.
//
// The paper population is sorted by impact factor, highest first, and split
// into L levels where each level holds twice as many papers as the one above
// it. The top level gets weight L, the bottom level weight 1. A paper's
// weighted IF is weight * IF.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leadix/error.hpp"

namespace leadix {

/// How the top-level size X is derived from the total paper count Y.
enum class DivisorMode {
    geometric_sum,  // X = floor(Y / (2^L - 1)); the L levels exactly cover Y
    half_pow,       // X = floor(Y / 2^(L-1))
};

std::string_view to_string(DivisorMode m) noexcept;
std::optional<DivisorMode> parse_divisor_mode(std::string_view s) noexcept;

struct JournalCitations {
    std::string journal;
    int year = 0;
    double total_citations = 0.0;
    double impact_factor = 0.0;
};

struct JournalPaperCount {
    std::string journal;
    int year = 0;
    long long paper_count = 0;
    double impact_factor = 0.0;
};

struct PaperCountEstimate {
    std::vector<JournalPaperCount> counts;  // input order
    long long total_papers = 0;
    std::vector<Issue> warnings;  // zero-IF journals
};

/// paper_count = citations / IF, rounded half-to-even. Zero-IF journals pass
/// through with count 0 and a warning. Throws std::invalid_argument on negative
/// or non-finite citations or impact factors.
PaperCountEstimate estimate_paper_counts(std::span<const JournalCitations> journals);

struct CorpusEntry {
    long long paper_count = 0;
    double impact_factor = 0.0;
};

/// Papers in the top level for a population of `total_papers`.
long long base_count(long long total_papers, int level_count, DivisorMode mode);

class ToughnessTable {
public:
    /// Rebuilds a table from its serialized parts. `cutoffs[k]` is the
    /// smallest IF carrying weight level_count - k. Throws std::invalid_argument
    /// if the cutoffs are not non-increasing or their count is not level_count - 1.
    static ToughnessTable from_cutoffs(int level_count, std::vector<double> cutoffs, long long base_count,
                                       long long total_papers, DivisorMode mode);

    int level_count() const noexcept { return level_count_; }
    const std::vector<double>& cutoffs() const noexcept { return cutoffs_; }
    long long base_count() const noexcept { return base_count_; }
    long long total_papers() const noexcept { return total_papers_; }
    DivisorMode divisor_mode() const noexcept { return mode_; }

    /// Papers assigned to each level, top level first. Empty for tables
    /// rebuilt from cutoffs.
    const std::vector<long long>& level_sizes() const noexcept { return level_sizes_; }

    /// Weight per level, top level first: L, L-1, ..., 1.
    std::vector<int> weights() const;

    /// Weight of the level whose IF range contains `impact_factor`. A value
    /// equal to a cutoff gets the higher weight.
    int weight_of(double impact_factor) const noexcept;

    double weighted_if(double impact_factor) const noexcept { return weight_of(impact_factor) * impact_factor; }

    friend bool operator==(const ToughnessTable&, const ToughnessTable&) = default;

private:
    friend ToughnessTable build_table(std::span<const CorpusEntry>, int, DivisorMode);

    int level_count_ = 10;
    std::vector<double> cutoffs_;
    std::vector<long long> level_sizes_;
    long long base_count_ = 0;
    long long total_papers_ = 0;
    DivisorMode mode_ = DivisorMode::geometric_sum;
};

/// Partitions the paper population into `level_count` levels.
///
/// Papers sharing an impact factor are never split: a group straddling a
/// level boundary goes entirely to the higher level. The bottom level absorbs
/// any remainder. Throws std::invalid_argument when the corpus is empty, holds
/// fewer than 2^L - 1 papers, or has negative counts or impact factors.
ToughnessTable build_table(std::span<const CorpusEntry> corpus, int level_count = 10,
                           DivisorMode mode = DivisorMode::geometric_sum);

}  // namespace leadix
