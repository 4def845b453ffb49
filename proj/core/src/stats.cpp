#include "leadix/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "leadix/summation.hpp"

namespace leadix {

namespace {

constexpr double kCfTolerance = 1e-14;
constexpr int kCfMaxIterations = 10'000;
constexpr double kTiny = 1e-300;

double mean_of(std::span<const double> v) {
    return pairwise_sum(v) / static_cast<double>(v.size());
}

// Sum of squared deviations, with the corrected two-pass term.
double centered_ss(std::span<const double> v, double mean) {
    std::vector<double> dev(v.size());
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        dev[i] = v[i] - mean;
        sq[i] = dev[i] * dev[i];
    }
    const double drift = pairwise_sum(dev);
    return pairwise_sum(sq) - drift * drift / static_cast<double>(v.size());
}

bool all_equal(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

// Continued fraction for I_x(a, b); converges quickly for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kCfMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kCfTolerance) return h;
    }
    return h;
}

}  // namespace

MeanSd mean_sd(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("mean_sd: empty input");
    if (all_equal(values)) return {values.front(), 0.0};
    const double mean = mean_of(values);
    const double ss = std::max(0.0, centered_ss(values, mean));
    return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("incomplete beta: a and b must be positive");
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("incomplete beta: x must lie in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
    if (!(df > 0.0)) throw std::invalid_argument("student t: degrees of freedom must be positive");
    if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(t)) return 0.0;
    const double x = df / (df + t * t);
    return std::clamp(regularized_incomplete_beta(0.5 * df, 0.5, x), 0.0, 1.0);
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("welch_t_test: each sample needs at least 2 values");
    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    const auto sa = mean_sd(a);
    const auto sb = mean_sd(b);
    const double qa = sa.sd * sa.sd / na;
    const double qb = sb.sd * sb.sd / nb;
    const double se2 = qa + qb;

    WelchResult r;
    const double diff = sa.mean - sb.mean;
    if (se2 == 0.0) {
        r.degenerate = true;
        r.df = na + nb - 2.0;
        if (diff == 0.0) {
            r.t = 0.0;
            r.p_two_sided = 1.0;
        } else {
            r.t = diff > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
            r.p_two_sided = 0.0;
        }
        return r;
    }
    r.t = diff / std::sqrt(se2);
    r.df = se2 * se2 / (qa * qa / (na - 1.0) + qb * qb / (nb - 1.0));
    r.p_two_sided = student_t_two_sided_p(r.t, r.df);
    return r;
}

PearsonResult pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson: samples differ in length");
    if (x.size() < 3) throw std::invalid_argument("pearson: needs at least 3 pairs");
    if (all_equal(x) || all_equal(y)) throw std::invalid_argument("pearson: zero variance");

    const double mx = mean_of(x);
    const double my = mean_of(y);
    std::vector<double> sxy(x.size());
    std::vector<double> sxx(x.size());
    std::vector<double> syy(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy[i] = dx * dy;
        sxx[i] = dx * dx;
        syy[i] = dy * dy;
    }
    const double denom = std::sqrt(pairwise_sum(sxx) * pairwise_sum(syy));
    if (!(denom > 0.0)) throw std::invalid_argument("pearson: zero variance");

    PearsonResult res;
    res.r = std::clamp(pairwise_sum(sxy) / denom, -1.0, 1.0);
    const double n = static_cast<double>(x.size());
    if (std::abs(res.r) == 1.0) {
        res.p_two_sided = 0.0;
    } else {
        const double t = res.r * std::sqrt((n - 2.0) / (1.0 - res.r * res.r));
        res.p_two_sided = student_t_two_sided_p(t, n - 2.0);
    }
    return res;
}

Significance significance_of(double p) noexcept {
    if (p < 0.01) return Significance::p01;
    if (p < 0.05) return Significance::p05;
    return Significance::none;
}

std::string_view stars(Significance s) noexcept {
    switch (s) {
        case Significance::p01: return "**";
        case Significance::p05: return "*";
        case Significance::none: return "";
    }
    return "";
}

}  // namespace leadix
