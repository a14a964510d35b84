#include "greenlink/orthogonal_ser.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "greenlink/errors.hpp"
#include "greenlink/quadrature.hpp"
#include "greenlink/special_functions.hpp"

namespace greenlink {
namespace {

constexpr long kAlternatingMaxM = 16;

const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

// log Phi(x), accurate in both tails.
double log_gaussian_cdf(double x) {
    if (x > 5.0) return std::log1p(-gaussian_q(x));
    if (x > -37.0) return std::log(gaussian_q(-x));
    // Asymptotic series of the Mills ratio.
    const double z = 1.0 / (x * x);
    const double series = 1.0 - z * (1.0 - 3.0 * z * (1.0 - 5.0 * z * (1.0 - 7.0 * z)));
    return -0.5 * x * x - std::log(-x) - kLogSqrt2Pi + std::log(series);
}

// phi(x) / Phi(x).
double mills(double x) { return std::exp(-0.5 * x * x - kLogSqrt2Pi - log_gaussian_cdf(x)); }

// d/dx of phi(x) / Phi(x).
double mills_slope(double x) {
    const double r = mills(x);
    return -r * (x + r);
}

// 1 - (1 - x)^n - n x for x in [0, 1].
double union_gap(double n, double x) {
    if (n * x <= 0.05) {
        double term = 0.5 * n * (n - 1.0) * x * x;
        double sum = -term;
        for (double k = 2.0; k < n; k += 1.0) {
            term *= (n - k) / (k + 1.0) * x;
            sum += (static_cast<long>(k) % 2 == 0) ? term : -term;
            if (term <= 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return -std::expm1(n * std::log1p(-x)) - n * x;
}

double log_binomial(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// First j where sum_{k>=2} C(n,k) (k+1)^{-(j+1)} is below 1e-17 of n 2^{-(j+1)}.
int mixture_cutoff(long n) {
    const double nd = static_cast<double>(n);
    const double target = std::log(1e-17) - 2.0 * std::log(nd);
    auto excess = [&](int j) {
        double worst = -std::numeric_limits<double>::infinity();
        for (long k = 2; k <= n; ++k) {
            const double kd = static_cast<double>(k);
            worst = std::max(worst, log_binomial(nd, kd) - (j + 1.0) * std::log(kd + 1.0));
        }
        return worst - std::log(nd) + (j + 1.0) * std::numbers::ln2;
    };
    int lo = 0;
    int hi = 64;
    while (excess(hi) > target) {
        lo = hi;
        hi *= 2;
        if (hi > (1 << 24)) throw NumericalFailure("orthogonal SER: mixture cutoff not found");
    }
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (excess(mid) <= target) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

struct MixtureTable {
    double n = 1.0;
    // log(-d_j) - lgamma(j + 1); -inf where d_j == 0.
    std::vector<double> log_weight;
};

MixtureTable build_mixture_table(long m) {
    MixtureTable table;
    const long n = m - 1;
    table.n = static_cast<double>(n);
    if (n < 2) return table;
    const int cutoff = mixture_cutoff(n);
    table.log_weight.reserve(static_cast<std::size_t>(cutoff));
    QuadratureOptions opts;
    opts.abs_tol = 1e-300;
    opts.rel_tol = 1e-12;
    for (int j = 0; j < cutoff; ++j) {
        const double jd = j;
        const double log_norm = std::lgamma(jd + 1.0);
        auto integrand = [&](double w) {
            const double log_density = (j == 0 ? 0.0 : jd * std::log(w)) - w - log_norm;
            if (log_density < -745.0) return 0.0;
            return std::exp(log_density) * union_gap(table.n, std::exp(-w));
        };
        const double d = integrate_half_line(integrand, jd + 1.0, opts).value;
        table.log_weight.push_back(d < 0.0 ? std::log(-d) - log_norm
                                           : -std::numeric_limits<double>::infinity());
    }
    return table;
}

const MixtureTable& mixture_table(long m) {
    static std::mutex mutex;
    static std::map<long, std::unique_ptr<const MixtureTable>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[m];
    if (!slot) slot = std::make_unique<const MixtureTable>(build_mixture_table(m));
    return *slot;
}

// Above this SNR the coherent SER is its first Bonferroni term.
double coherent_union_threshold(long m) { return 6.0 * (std::log(static_cast<double>(m)) + 36.0); }

void check_args(long m, double gamma) {
    if (m < 2) throw DomainError("orthogonal SER: M must be >= 2");
    if (!(gamma >= 0.0)) throw DomainError("orthogonal SER: gamma must be >= 0");
}

}  // namespace

double noncoherent_orthogonal_ser_alternating(long m, double gamma) {
    check_args(m, gamma);
    const long n = m - 1;
    double binom = 1.0;
    double sum = 0.0;
    for (long k = 1; k <= n; ++k) {
        binom = binom * static_cast<double>(n - k + 1) / static_cast<double>(k);
        const double kd = static_cast<double>(k);
        const double term = binom / (kd + 1.0) * std::exp(-kd * gamma / (kd + 1.0));
        sum += (k % 2 == 1) ? term : -term;
    }
    return std::clamp(sum, 0.0, 1.0);
}

double noncoherent_orthogonal_ser_mixture(long m, double gamma) {
    check_args(m, gamma);
    const auto& table = mixture_table(m);
    const double union_term = 0.5 * table.n * std::exp(-0.5 * gamma);
    if (table.log_weight.empty()) return std::min(union_term, 1.0);
    const double floor = std::log(0.5 * table.n) - 0.5 * gamma + std::log(1e-18);
    const double log_gamma = gamma > 0.0 ? std::log(gamma) : 0.0;
    double correction = 0.0;
    for (std::size_t j = 0; j < table.log_weight.size(); ++j) {
        if (gamma == 0.0 && j > 0) break;
        const double expo = -gamma + static_cast<double>(j) * log_gamma + table.log_weight[j];
        if (expo < floor || expo < -745.0) continue;
        correction += std::exp(expo);
    }
    return std::clamp(union_term - correction, 0.0, 1.0);
}

double noncoherent_orthogonal_ser(long m, double gamma) {
    if (m <= kAlternatingMaxM) return noncoherent_orthogonal_ser_alternating(m, gamma);
    return noncoherent_orthogonal_ser_mixture(m, gamma);
}

double coherent_orthogonal_ser(long m, double gamma, int nodes) {
    check_args(m, gamma);
    const GaussHermiteRule& rule = gauss_hermite(nodes);
    const double n = static_cast<double>(m - 1);
    const double a = std::sqrt(2.0 * gamma);

    // Bonferroni: (M-1) Q(sqrt g) - P_s <= C(M-1, 2) Q(sqrt(4g/3)), which is
    // below 1e-15 of the first term once g >= 6 (ln M + 36).
    if (gamma >= coherent_union_threshold(m)) {
        return std::min(1.0, n * gaussian_q(std::sqrt(gamma)));
    }

    // Error iff the largest of the n wrong-tone outputs, Y, beats the right
    // one: P_s = integral of n phi(y) Phi(y)^{n-1} Phi(y - a) dy. The
    // integrand is log-concave, so a Gauss-Hermite rule centred on its mode
    // and scaled by the curvature there converges fast for any M.
    const double log_n = std::log(n);
    auto log_g = [&](double y) {
        return log_n - 0.5 * y * y - kLogSqrt2Pi + (n - 1.0) * log_gaussian_cdf(y) +
               log_gaussian_cdf(y - a);
    };
    auto slope = [&](double y) { return -y + (n - 1.0) * mills(y) + mills(y - a); };
    auto curvature = [&](double y) { return -1.0 + (n - 1.0) * mills_slope(y) + mills_slope(y - a); };

    // Safeguarded Newton on the (decreasing) slope. The rule only needs the
    // centre to a small fraction of the width.
    double lo = -1.0;
    double hi = 1.0;
    while (slope(lo) <= 0.0) lo *= 2.0;
    while (slope(hi) >= 0.0) hi *= 2.0;
    double y = 0.5 * (lo + hi);
    double curv = curvature(y);
    for (int it = 0; it < 100; ++it) {
        const double s = slope(y);
        if (s == 0.0) break;
        (s > 0.0 ? lo : hi) = y;
        double next = y - s / curv;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - y);
        y = next;
        curv = curvature(y);
        if (step * std::sqrt(-curv) <= 1e-3) break;
    }
    const double scale = std::numbers::sqrt2 / std::sqrt(-curv);

    // Nodes are stored in descending order; walk outward from the middle and
    // stop on each side after two terms below 1e-17 of the running sum.
    const std::size_t count = rule.nodes.size();
    auto term = [&](std::size_t i) {
        const double x = rule.nodes[i];
        const double lg = log_g(y + scale * x);
        return lg < -745.0 ? 0.0 : rule.weights[i] * std::exp(x * x + lg);
    };
    const std::size_t mid = count / 2;
    double sum = 0.0;
    int small_up = 0;
    int small_down = 0;
    std::size_t up = mid;    // next index toward negative x
    std::size_t down = mid;  // indices below `down` hold positive x
    while (up < count || down > 0) {
        if (up < count && small_up < 2) {
            const double t = term(up++);
            sum += t;
            small_up = t < 1e-17 * sum ? small_up + 1 : 0;
        } else {
            up = count;
        }
        if (down > 0 && small_down < 2) {
            const double t = term(--down);
            sum += t;
            small_down = t < 1e-17 * sum ? small_down + 1 : 0;
        } else {
            down = 0;
        }
    }
    return std::clamp(scale * sum, 0.0, 1.0);
}

namespace {

// log P_s + a^2/4 against a = sqrt(2 g) on [0, a_max], piecewise Chebyshev.
// P_s is analytic in a (not in g, which has a square-root branch at 0).
constexpr int kChebDegree = 16;
constexpr double kPanelWidth = 0.25;

struct CoherentTable {
    double a_max = 0.0;
    std::vector<std::array<double, kChebDegree>> coef;
};

CoherentTable build_coherent_table(long m) {
    CoherentTable table;
    table.a_max = std::sqrt(2.0 * coherent_union_threshold(m));
    const auto panels = static_cast<std::size_t>(std::ceil(table.a_max / kPanelWidth));
    table.coef.resize(panels);
    constexpr double kN = kChebDegree;
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = (static_cast<double>(p) + 0.5) * kPanelWidth;
        std::array<double, kChebDegree> f{};
        for (int k = 0; k < kChebDegree; ++k) {
            const double a = mid + 0.5 * kPanelWidth * std::cos(std::numbers::pi * (k + 0.5) / kN);
            f[static_cast<std::size_t>(k)] = std::log(coherent_orthogonal_ser(m, 0.5 * a * a)) + 0.25 * a * a;
        }
        for (int j = 0; j < kChebDegree; ++j) {
            double c = 0.0;
            for (int k = 0; k < kChebDegree; ++k) {
                c += f[static_cast<std::size_t>(k)] * std::cos(std::numbers::pi * j * (k + 0.5) / kN);
            }
            table.coef[p][static_cast<std::size_t>(j)] = 2.0 * c / kN;
        }
    }
    return table;
}

const CoherentTable& coherent_table(long m) {
    static std::mutex mutex;
    static std::map<long, std::unique_ptr<const CoherentTable>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[m];
    if (!slot) slot = std::make_unique<const CoherentTable>(build_coherent_table(m));
    return *slot;
}

}  // namespace

double coherent_orthogonal_ser_tabulated(long m, double gamma) {
    check_args(m, gamma);
    const CoherentTable& table = coherent_table(m);
    const double a = std::sqrt(2.0 * gamma);
    if (a >= table.a_max) return coherent_orthogonal_ser(m, gamma);
    const auto p = std::min(static_cast<std::size_t>(a / kPanelWidth), table.coef.size() - 1);
    const double x = (a - (static_cast<double>(p) + 0.5) * kPanelWidth) / (0.5 * kPanelWidth);
    // Clenshaw.
    const auto& c = table.coef[p];
    double b1 = 0.0;
    double b2 = 0.0;
    for (int j = kChebDegree - 1; j >= 1; --j) {
        const double b0 = 2.0 * x * b1 - b2 + c[static_cast<std::size_t>(j)];
        b2 = b1;
        b1 = b0;
    }
    const double f = x * b1 - b2 + 0.5 * c[0];
    return std::clamp(std::exp(f - 0.25 * a * a), 0.0, 1.0);
}

}  // namespace greenlink
