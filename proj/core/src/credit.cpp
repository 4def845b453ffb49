#include "leadix/credit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "leadix/summation.hpp"

namespace leadix {

namespace {

constexpr long long kExactHarmonicLimit = 10'000;
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

double harmonic_asymptotic(long long n) {
    const double x = static_cast<double>(n);
    const double inv2 = 1.0 / (x * x);
    return std::log(x) + kEulerGamma + 0.5 / x - inv2 / 12.0 + inv2 * inv2 / 120.0 - inv2 * inv2 * inv2 / 252.0;
}

int tie_span_for_group(CreditScenario scenario, long long n) {
    return (scenario == CreditScenario::tied && n >= 2) ? 2 : 1;
}

// Leading-author share for a group of n; a_index where exact summation is cheap.
double leading_share(long long n, CreditScenario scenario) {
    const int span = tie_span_for_group(scenario, n);
    if (n <= kExactHarmonicLimit) return a_index(static_cast<int>(n), 1, span);
    const double h = harmonic_asymptotic(n);
    const double x = static_cast<double>(n);
    return span == 1 ? h / x : (2.0 * h - 1.0) / (2.0 * x);
}

}  // namespace

std::string_view to_string(CreditScenario s) noexcept {
    return s == CreditScenario::ranked ? "ranked" : "tied";
}

std::optional<CreditScenario> parse_credit_scenario(std::string_view s) noexcept {
    if (s == "ranked") return CreditScenario::ranked;
    if (s == "tied") return CreditScenario::tied;
    return std::nullopt;
}

double harmonic_number(long long n) {
    if (n <= 0) return 0.0;
    if (n > kExactHarmonicLimit) return harmonic_asymptotic(n);
    CompensatedSum sum;
    for (long long j = n; j >= 1; --j) sum.add(1.0 / static_cast<double>(j));
    return sum.value();
}

double a_index(int author_count, int credit_position, int tie_span) {
    if (author_count < 1 || credit_position < 1 || tie_span < 1 ||
        static_cast<long long>(credit_position) + tie_span - 1 > author_count) {
        throw std::invalid_argument("a_index: position " + std::to_string(credit_position) + " with tie span " +
                                    std::to_string(tie_span) + " out of range for " + std::to_string(author_count) +
                                    " authors");
    }
    const int last = credit_position + tie_span - 1;

    // Tail sum S_last = sum_{j=last..n} 1/j, smallest terms first.
    CompensatedSum tail;
    for (int j = author_count; j >= last; --j) tail.add(1.0 / j);

    // Sum of S_k for k = last down to credit_position, where S_k = S_{k+1} + 1/k.
    CompensatedSum total;
    total.add(tail.value());
    for (int k = last - 1; k >= credit_position; --k) {
        tail.add(1.0 / k);
        total.add(tail.value());
    }
    return total.value() / (static_cast<double>(tie_span) * author_count);
}

int effective_tie_span(CreditScenario scenario, int author_count, int credit_position, int recorded_tie_span) noexcept {
    if (scenario == CreditScenario::ranked) return 1;
    if (recorded_tie_span > 1) return recorded_tie_span;
    return credit_position < author_count ? 2 : 1;
}

long long group_size_for_credit(double target_share, CreditScenario scenario) {
    if (!(target_share > 0.0 && target_share <= 1.0)) {
        throw std::invalid_argument("group_size_for_credit: target share must lie in (0, 1]");
    }
    constexpr long long kCap = 1LL << 62;
    // leading_share is strictly decreasing in n and equals 1 at n = 1.
    long long lo = 1;
    long long hi = 2;
    while (hi < kCap && leading_share(hi, scenario) >= target_share) {
        lo = hi;
        hi *= 2;
    }
    if (hi >= kCap) return lo;
    // Invariant: share(lo) >= target > share(hi).
    while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        if (leading_share(mid, scenario) >= target_share)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace leadix
