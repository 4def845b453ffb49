#pragma once

#include <span>
#include <string_view>

namespace leadix {

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;  // sample SD (n - 1 denominator); 0 for a single value
};

/// Throws std::invalid_argument on empty input.
MeanSd mean_sd(std::span<const double> values);

/// Regularized incomplete beta I_x(a, b), a, b > 0, 0 <= x <= 1.
/// Continued fraction (modified Lentz).
double regularized_incomplete_beta(double a, double b, double x);

/// Two-sided tail probability P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p_two_sided = 1.0;
    /// Both samples constant: p is 1 when their values agree, 0 otherwise, by convention.
    bool degenerate = false;
};

/// Welch's unequal-variance two-sample t-test. Throws std::invalid_argument
/// when either sample has fewer than two values.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

struct PearsonResult {
    double r = 0.0;
    double p_two_sided = 1.0;
};

/// Pearson correlation with a t-test on n - 2 degrees of freedom. Throws
/// std::invalid_argument on length mismatch, fewer than 3 pairs, or zero variance.
PearsonResult pearson(std::span<const double> x, std::span<const double> y);

enum class Significance { none, p05, p01 };

/// p < 0.01 -> p01, p < 0.05 -> p05, otherwise none.
Significance significance_of(double p) noexcept;

/// "", "*" or "**".
std::string_view stars(Significance s) noexcept;

}  // namespace leadix
