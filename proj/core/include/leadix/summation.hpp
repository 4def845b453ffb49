#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace leadix {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Pairwise (cascade) summation; error grows as O(log n) rather than O(n).
double pairwise_sum(std::span<const double> values) noexcept;

}  // namespace leadix
