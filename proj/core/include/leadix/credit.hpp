#pragma once

// Coauthor credit allocation: the axiomatic A-index.
//
// For n coauthors ranked by contribution, the author at rank i receives
//
//     A_i = (1/n) * sum_{j=i..n} 1/j
//
// The shares sum to 1. Authors tied across s consecutive ranks share the
// arithmetic mean of the A values of those ranks.

#include <optional>
#include <string_view>

namespace leadix {

enum class CreditScenario {
    ranked,  // the PI holds its credit position outright
    tied,    // the PI shares equal credit with the adjacent position(s)
};

std::string_view to_string(CreditScenario s) noexcept;
std::optional<CreditScenario> parse_credit_scenario(std::string_view s) noexcept;

/// H_n = 1 + 1/2 + ... + 1/n. Compensated summation up to 10,000 terms,
/// asymptotic expansion beyond.
double harmonic_number(long long n);

/// Credit share of the author at `credit_position` among `author_count`
/// coauthors, averaged over `tie_span` tied positions.
///
/// Throws std::invalid_argument unless 1 <= credit_position,
/// credit_position + tie_span - 1 <= author_count and tie_span >= 1.
double a_index(int author_count, int credit_position, int tie_span = 1);

/// Tie span used for a PI's paper under a scenario. Ranked ignores recorded
/// ties. Tied uses the recorded span when it exceeds 1, otherwise a two-way
/// tie with the next position (clipped at the last author).
int effective_tie_span(CreditScenario scenario, int author_count, int credit_position, int recorded_tie_span) noexcept;

/// Largest group size n for which a leading PI still earns at least
/// `target_share` (position 1; tied scenario shares it with position 2).
///
/// Throws std::invalid_argument unless 0 < target_share <= 1.
long long group_size_for_credit(double target_share, CreditScenario scenario);

}  // namespace leadix
