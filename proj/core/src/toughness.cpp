#include "leadix/toughness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace leadix {

namespace {

constexpr int kMaxLevels = 40;

void check_level_count(int level_count) {
    if (level_count < 1 || level_count > kMaxLevels) {
        throw std::invalid_argument("toughness level count must lie in 1.." + std::to_string(kMaxLevels));
    }
}

// 0-based level (0 = top) of the paper at sorted position `pos`.
int level_of_position(long long pos, long long base, int level_count) {
    const auto q = static_cast<unsigned long long>(pos / base);
    const int level = static_cast<int>(std::bit_width(q + 1)) - 1;
    return std::min(level, level_count - 1);
}

}  // namespace

std::string_view to_string(DivisorMode m) noexcept {
    return m == DivisorMode::geometric_sum ? "geometric_sum" : "half_pow";
}

std::optional<DivisorMode> parse_divisor_mode(std::string_view s) noexcept {
    if (s == "geometric_sum") return DivisorMode::geometric_sum;
    if (s == "half_pow") return DivisorMode::half_pow;
    return std::nullopt;
}

PaperCountEstimate estimate_paper_counts(std::span<const JournalCitations> journals) {
    PaperCountEstimate out;
    out.counts.reserve(journals.size());
    for (const auto& j : journals) {
        if (!std::isfinite(j.total_citations) || j.total_citations < 0.0) {
            throw std::invalid_argument("journal '" + j.journal + "': citation count must be a non-negative number");
        }
        if (!std::isfinite(j.impact_factor) || j.impact_factor < 0.0) {
            throw std::invalid_argument("journal '" + j.journal + "': impact factor must be a non-negative number");
        }
        long long count = 0;
        if (j.impact_factor == 0.0) {
            out.warnings.push_back({"zero_impact_factor", "journal '" + j.journal + "' year " + std::to_string(j.year) +
                                                              " has impact factor 0; paper count set to 0"});
        } else {
            // nearbyint under the default rounding mode rounds half to even.
            count = static_cast<long long>(std::nearbyint(j.total_citations / j.impact_factor));
        }
        out.total_papers += count;
        out.counts.push_back({j.journal, j.year, count, j.impact_factor});
    }
    return out;
}

long long base_count(long long total_papers, int level_count, DivisorMode mode) {
    check_level_count(level_count);
    if (total_papers < 0) throw std::invalid_argument("total paper count must be non-negative");
    if (mode == DivisorMode::geometric_sum) return total_papers / ((1LL << level_count) - 1);
    return total_papers >> (level_count - 1);
}

ToughnessTable ToughnessTable::from_cutoffs(int level_count, std::vector<double> cutoffs, long long base,
                                            long long total, DivisorMode mode) {
    check_level_count(level_count);
    if (cutoffs.size() != static_cast<std::size_t>(level_count - 1)) {
        throw std::invalid_argument("toughness table needs " + std::to_string(level_count - 1) + " cutoffs");
    }
    for (std::size_t k = 0; k < cutoffs.size(); ++k) {
        if (!std::isfinite(cutoffs[k]) || cutoffs[k] < 0.0) {
            throw std::invalid_argument("toughness cutoffs must be finite and non-negative");
        }
        if (k > 0 && cutoffs[k] > cutoffs[k - 1]) {
            throw std::invalid_argument("toughness cutoffs must be non-increasing from the top level down");
        }
    }
    ToughnessTable t;
    t.level_count_ = level_count;
    t.cutoffs_ = std::move(cutoffs);
    t.base_count_ = base;
    t.total_papers_ = total;
    t.mode_ = mode;
    return t;
}

std::vector<int> ToughnessTable::weights() const {
    std::vector<int> w(static_cast<std::size_t>(level_count_));
    for (int k = 0; k < level_count_; ++k) w[static_cast<std::size_t>(k)] = level_count_ - k;
    return w;
}

int ToughnessTable::weight_of(double impact_factor) const noexcept {
    for (std::size_t k = 0; k < cutoffs_.size(); ++k) {
        if (impact_factor >= cutoffs_[k]) return level_count_ - static_cast<int>(k);
    }
    return 1;
}

ToughnessTable build_table(std::span<const CorpusEntry> corpus, int level_count, DivisorMode mode) {
    check_level_count(level_count);
    if (corpus.empty()) throw std::invalid_argument("toughness corpus is empty");

    std::vector<CorpusEntry> sorted;
    sorted.reserve(corpus.size());
    long long total = 0;
    for (const auto& e : corpus) {
        if (e.paper_count < 0) throw std::invalid_argument("toughness corpus has a negative paper count");
        if (!std::isfinite(e.impact_factor) || e.impact_factor < 0.0) {
            throw std::invalid_argument("toughness corpus has a negative or non-finite impact factor");
        }
        if (e.paper_count == 0) continue;
        total += e.paper_count;
        sorted.push_back(e);
    }
    const long long minimum = (1LL << level_count) - 1;
    if (total < minimum) {
        throw std::invalid_argument("toughness corpus has " + std::to_string(total) + " papers; " +
                                    std::to_string(level_count) + " levels need at least " + std::to_string(minimum));
    }

    // Highest IF first; merge rows sharing an IF so a tie group is placed as one unit.
    std::sort(sorted.begin(), sorted.end(),
              [](const CorpusEntry& a, const CorpusEntry& b) { return a.impact_factor > b.impact_factor; });
    std::vector<CorpusEntry> groups;
    for (const auto& e : sorted) {
        if (!groups.empty() && groups.back().impact_factor == e.impact_factor)
            groups.back().paper_count += e.paper_count;
        else
            groups.push_back(e);
    }

    const long long base = base_count(total, level_count, mode);
    const auto levels = static_cast<std::size_t>(level_count);

    ToughnessTable t;
    t.level_count_ = level_count;
    t.base_count_ = base;
    t.total_papers_ = total;
    t.mode_ = mode;
    t.level_sizes_.assign(levels, 0);

    // Smallest IF seen at each level; levels left empty inherit from above.
    std::vector<double> level_min(levels, std::numeric_limits<double>::quiet_NaN());
    long long pos = 0;
    for (const auto& g : groups) {
        const auto level = static_cast<std::size_t>(level_of_position(pos, base, level_count));
        t.level_sizes_[level] += g.paper_count;
        level_min[level] = g.impact_factor;
        pos += g.paper_count;
    }

    t.cutoffs_.resize(levels - 1);
    double carry = groups.front().impact_factor;
    for (std::size_t k = 0; k + 1 < levels; ++k) {
        if (!std::isnan(level_min[k])) carry = level_min[k];
        t.cutoffs_[k] = carry;
    }
    return t;
}

}  // namespace leadix
