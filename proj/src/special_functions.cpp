#include "greenlink/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "greenlink/errors.hpp"

namespace greenlink {
namespace {

constexpr double kSeriesSwitch = 30.0;
constexpr double kEps = 1e-17;
constexpr int kMaxMarcumTerms = 200000;

double i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < kEps * sum) break;
    }
    return sum;
}

// sum_k ((2k-1)!!)^2 / (k! (8x)^k), truncated before the terms start growing.
double i0_asymptotic_sum(double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 1000; ++k) {
        const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        if (next > term) break;
        term = next;
        sum += term;
        if (term < kEps * sum) break;
    }
    return sum;
}

// I_k(x) / I_0(x) for k = 0..n via Miller's backward recurrence
// I_{k-1} = (2k / x) I_k + I_{k+1}, normalized by the k = 0 value.
std::vector<double> bessel_i_ratios(int n, double x) {
    std::vector<double> r(static_cast<std::size_t>(n) + 1, 0.0);
    r[0] = 1.0;
    if (n == 0) return r;
    const double span = std::max({static_cast<double>(n), x, 1.0});
    const int start = static_cast<int>(std::max(static_cast<double>(n), std::ceil(x)) +
                                       std::ceil(std::sqrt(60.0 * span)) + 20.0);
    double above = 0.0;
    double current = 1e-280;
    for (int k = start; k >= 1; --k) {
        const double below = (2.0 * k / x) * current + above;
        above = current;
        current = below;
        const int idx = k - 1;
        if (idx <= n) r[static_cast<std::size_t>(idx)] = current;
        if (std::abs(current) > 1e250) {
            for (int j = idx; j <= n; ++j) r[static_cast<std::size_t>(j)] *= 1e-250;
            above *= 1e-250;
            current *= 1e-250;
        }
    }
    const double norm = r[0];
    for (auto& v : r) v /= norm;
    return r;
}

// Number of Neumann-series terms needed for ratio rho <= 1 at argument x.
int marcum_terms(double rho, double x) {
    const double by_x = std::sqrt(90.0 * std::max(x, 1.0)) + 30.0;
    double by_rho = std::numeric_limits<double>::infinity();
    if (rho < 1.0) {
        const double log_rho = std::log(rho);
        by_rho = (40.0 + std::log1p(1.0 / (1.0 - rho))) / -log_rho + 2.0;
    }
    const double n = std::ceil(std::min(by_x, by_rho));
    if (!(n <= kMaxMarcumTerms)) {
        throw NumericalFailure("marcum_q1: series needs more than 200000 terms");
    }
    return static_cast<int>(n);
}

// e^{-(a^2+b^2)/2} sum_{k>=first} rho^k I_k(ab), rho = min(a,b)/max(a,b).
double marcum_series(double a, double b, int first) {
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    const double rho = lo / hi;
    const double x = a * b;
    const int n = marcum_terms(rho, x);
    const auto ratios = bessel_i_ratios(n, x);
    double sum = 0.0;
    double power = first == 0 ? 1.0 : rho;
    for (int k = first; k <= n; ++k) {
        const double term = power * ratios[static_cast<std::size_t>(k)];
        sum += term;
        if (k > first && term < kEps * sum && k > std::sqrt(x)) break;
        power *= rho;
        if (power == 0.0) break;
    }
    const double d = a - b;
    return std::exp(-0.5 * d * d) * bessel_i0e(x) * sum;
}

}  // namespace

double bessel_i0e(double x) {
    x = std::abs(x);
    if (std::isinf(x)) return 0.0;
    if (x <= kSeriesSwitch) return i0_series(x) * std::exp(-x);
    return i0_asymptotic_sum(x) / std::sqrt(2.0 * std::numbers::pi * x);
}

double bessel_i0(double x) {
    x = std::abs(x);
    if (x <= kSeriesSwitch) return i0_series(x);
    const double log_scale = x - 0.5 * std::log(2.0 * std::numbers::pi * x);
    const double sum = i0_asymptotic_sum(x);
    if (log_scale + std::log(sum) >= std::log(std::numeric_limits<double>::max())) {
        throw std::overflow_error("bessel_i0: result exceeds double range");
    }
    return std::exp(log_scale) * sum;
}

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double marcum_q1(double a, double b) {
    if (!(a >= 0.0) || !(b >= 0.0)) throw DomainError("marcum_q1: arguments must be >= 0");
    if (b == 0.0) return 1.0;
    if (a == 0.0) return std::exp(-0.5 * b * b);
    if (a < b) return std::clamp(marcum_series(a, b, 0), 0.0, 1.0);
    return std::clamp(1.0 - marcum_series(a, b, 1), 0.0, 1.0);
}

double marcum_q1_complement(double a, double b) {
    if (!(a >= 0.0) || !(b >= 0.0)) throw DomainError("marcum_q1: arguments must be >= 0");
    if (b == 0.0) return 0.0;
    if (a == 0.0) return -std::expm1(-0.5 * b * b);
    if (a >= b) return std::clamp(marcum_series(a, b, 1), 0.0, 1.0);
    return std::clamp(1.0 - marcum_series(a, b, 0), 0.0, 1.0);
}

}  // namespace greenlink
