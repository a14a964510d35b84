#include "greenlink/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace greenlink {
namespace {

GaussHermiteRule build_gauss_hermite(int n) {
    GaussHermiteRule rule;
    rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
    rule.weights.assign(static_cast<std::size_t>(n), 0.0);
    const double pim4 = std::pow(std::numbers::pi, -0.25);
    const int half = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.nodes[1];
        } else {
            z = 2.0 * z - rule.nodes[static_cast<std::size_t>(i - 2)];
        }
        double derivative = 0.0;
        bool converged = false;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
            }
            derivative = std::sqrt(2.0 * n) * p2;
            const double previous = z;
            z = previous - p1 / derivative;
            if (std::abs(z - previous) <= 1e-15 * std::max(1.0, std::abs(z))) {
                converged = true;
                break;
            }
        }
        if (!converged) throw NumericalFailure("gauss_hermite: Newton iteration failed");
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = z;
        rule.nodes[hi] = -z;
        rule.weights[lo] = 2.0 / (derivative * derivative);
        rule.weights[hi] = rule.weights[lo];
    }
    return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite(int n) {
    if (n < 2) throw DomainError("gauss_hermite: need at least two nodes");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const GaussHermiteRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<const GaussHermiteRule>(build_gauss_hermite(n));
    return *slot;
}

}  // namespace greenlink
