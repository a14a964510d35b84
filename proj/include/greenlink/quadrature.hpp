#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "greenlink/errors.hpp"

namespace greenlink {

struct QuadratureOptions {
    double abs_tol = 1e-13;
    double rel_tol = 1e-11;
    int max_subdivisions = 4000;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    int evaluations = 0;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod nodes on [-1, 1] (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel kronrod15(F& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[static_cast<std::size_t>(j)];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[static_cast<std::size_t>(j)] * sum;
        if (j % 2 == 1) gauss += kGaussWeights[static_cast<std::size_t>(j / 2)] * sum;
    }
    return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (G7/K15) integration of f over [lo, hi].
// Bisects the panel with the largest error estimate until the summed
// estimate drops below max(abs_tol, rel_tol * |I|). Throws NumericalFailure
// when max_subdivisions is exhausted first.
//
// `breaks` are optional interior points that seed the initial panels.
template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, const QuadratureOptions& opts = {},
                           std::span<const double> breaks = {}) {
    if (lo == hi) return {};
    std::priority_queue<detail::Panel> panels;
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    double left_edge = lo;
    auto seed = [&](double right_edge) {
        if (!(right_edge > left_edge)) return;
        const auto panel = detail::kronrod15(f, left_edge, right_edge);
        value += panel.value;
        error += panel.error;
        evaluations += 15;
        panels.push(panel);
        left_edge = right_edge;
    };
    for (double b : breaks) {
        if (b > lo && b < hi) seed(b);
    }
    seed(hi);
    for (int split = 0;; ++split) {
        if (error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(value))) break;
        if (split >= opts.max_subdivisions) {
            throw NumericalFailure("adaptive quadrature did not converge (estimated error " +
                                   std::to_string(error) + ")");
        }
        const auto worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        const auto left = detail::kronrod15(f, worst.lo, mid);
        const auto right = detail::kronrod15(f, mid, worst.hi);
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
    // Re-sum to shed the drift of the incremental updates.
    double total = 0.0;
    double total_error = 0.0;
    while (!panels.empty()) {
        total += panels.top().value;
        total_error += panels.top().error;
        panels.pop();
    }
    return {total, total_error, evaluations};
}

// Integral over [0, inf) through x = scale * t / (1 - t), t in [0, 1).
// Panels are seeded at x = scale * {1e-3, 1e-2, 0.1, 0.5, 1, 2, 5, 20}.
template <class F>
QuadratureResult integrate_half_line(F&& f, double scale, const QuadratureOptions& opts = {}) {
    static constexpr std::array<double, 8> kSeeds = {1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0};
    std::array<double, 8> breaks{};
    for (std::size_t i = 0; i < kSeeds.size(); ++i) breaks[i] = kSeeds[i] / (1.0 + kSeeds[i]);
    auto mapped = [&f, scale](double t) {
        if (t >= 1.0) return 0.0;
        const double one_minus = 1.0 - t;
        const double x = scale * t / one_minus;
        const double jac = scale / (one_minus * one_minus);
        const double v = f(x);
        return v == 0.0 ? 0.0 : v * jac;
    };
    return integrate(mapped, 0.0, 1.0, opts, breaks);
}

// Gauss-Hermite rule for integral_{-inf}^{inf} e^{-x^2} g(x) dx.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes by Newton iteration on the orthonormal Hermite recurrence.
// The 64- and 128-point rules are built once and cached.
const GaussHermiteRule& gauss_hermite(int n);

}  // namespace greenlink
