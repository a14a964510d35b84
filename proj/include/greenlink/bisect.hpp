#pragma once

#include <cmath>
#include <string>

#include "greenlink/errors.hpp"

namespace greenlink {

struct RootSpec {
    double lo = 0.0;
    double hi = 1.0;
    double rel_tol = 1e-9;
    int max_iter = 200;
    double f_tol = 0.0;      // stop once |f| <= f_tol
    bool geometric = false;  // midpoint sqrt(lo*hi); needs 0 < lo
};

class MaxIterationsExceeded : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

// Bracketed bisection. Stops when |f(x)| <= f_tol or the bracket is narrower
// than rel_tol * |x| (absolute rel_tol when x == 0).
template <class F>
double bisect(F&& f, const RootSpec& spec) {
    if (!(spec.lo < spec.hi)) throw DomainError("bisect: need lo < hi");
    if (spec.geometric && !(spec.lo > 0.0)) throw DomainError("bisect: geometric needs lo > 0");
    double lo = spec.lo;
    double hi = spec.hi;
    double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if (std::isnan(f_lo) || std::isnan(f_hi) || (f_lo > 0.0) == (f_hi > 0.0)) {
        throw NoSignChange("bisect: no sign change over [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    }
    for (int it = 0; it < spec.max_iter; ++it) {
        const double mid = spec.geometric ? std::sqrt(lo) * std::sqrt(hi) : lo + 0.5 * (hi - lo);
        const double f_mid = f(mid);
        if (std::isnan(f_mid)) throw NumericalFailure("bisect: function returned NaN");
        if (std::abs(f_mid) <= spec.f_tol || f_mid == 0.0) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        const double scale = std::abs(mid) > 0.0 ? std::abs(mid) : 1.0;
        if (hi - lo <= spec.rel_tol * scale) return lo + 0.5 * (hi - lo);
        if (mid == lo && mid == hi) return mid;
    }
    throw MaxIterationsExceeded("bisect: iteration cap reached");
}

}  // namespace greenlink
