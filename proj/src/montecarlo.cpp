#include "greenlink/montecarlo.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <variant>

#include "greenlink/errors.hpp"

namespace greenlink {

double sample_snr(const FadingModel& fading, double gamma_bar, RngStream& stream) {
    if (!(gamma_bar >= 0.0)) throw DomainError("sample_snr: gamma_bar must be >= 0");
    if (std::holds_alternative<Awgn>(fading)) return gamma_bar;
    if (const auto* r = std::get_if<Rician>(&fading); r && r->k > 0.0) {
        const double g1 = stream.normal() / std::numbers::sqrt2;
        const double g2 = stream.normal() / std::numbers::sqrt2;
        const double in_phase = std::sqrt(r->k) + g1;
        return gamma_bar / (1.0 + r->k) * (in_phase * in_phase + g2 * g2);
    }
    // Rayleigh, and Rician with K = 0.
    return -gamma_bar * std::log(stream.uniform());
}

std::vector<double> sample_snr(const FadingModel& fading, double gamma_bar, long n,
                               RngStream& stream) {
    if (n < 1) throw DomainError("sample_snr: n must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto& g : out) g = sample_snr(fading, gamma_bar, stream);
    return out;
}

void RunningStats::add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
}

McEstimate RunningStats::estimate() const {
    McEstimate e;
    e.mean = mean_;
    e.n_samples = n_;
    if (n_ > 1) {
        const double var = m2_ / static_cast<double>(n_ - 1);
        e.half_width_95 = 1.96 * std::sqrt(var / static_cast<double>(n_));
    }
    return e;
}

McEstimate mc_avg_ser(SchemeId scheme, long m, const FadingModel& fading, double gamma_bar,
                      long n, RngStream& stream) {
    if (n < kMinMcSamples) {
        throw ConfigError("mc_avg_ser: need at least " + std::to_string(kMinMcSamples) +
                          " samples, got " + std::to_string(n));
    }
    validate_m(scheme, m);
    validate(fading);
    RunningStats stats;
    if (gamma_bar == 0.0) {
        // Degenerate: every draw is 0.
        const double p = conditional_ser(scheme, m, 0.0);
        McEstimate e{p, 0.0, n};
        return e;
    }
    for (long i = 0; i < n; ++i) {
        stats.add(conditional_ser(scheme, m, sample_snr(fading, gamma_bar, stream)));
    }
    return stats.estimate();
}

double quad_avg_ser(SchemeId scheme, long m, const FadingModel& fading, double gamma_bar) {
    if (!(gamma_bar > 0.0)) throw DomainError("quad_avg_ser: gamma_bar must be > 0");
    return avg_ser_general(scheme, m, fading, gamma_bar, AveragingMethod::QuadratureExact);
}

std::uint64_t cell_stream_id(SchemeId scheme, long m, const FadingModel& fading,
                             double gamma_bar) {
    std::uint64_t h = splitmix64_mix(static_cast<std::uint64_t>(scheme) + 1);
    h = splitmix64_mix(h ^ static_cast<std::uint64_t>(m));
    h = splitmix64_mix(h ^ (static_cast<std::uint64_t>(fading.index()) + 1));
    const double k = std::holds_alternative<Rician>(fading) ? std::get<Rician>(fading).k : 0.0;
    h = splitmix64_mix(h ^ std::bit_cast<std::uint64_t>(k));
    h = splitmix64_mix(h ^ std::bit_cast<std::uint64_t>(mean_square_gain(fading)));
    return splitmix64_mix(h ^ std::bit_cast<std::uint64_t>(gamma_bar));
}

std::vector<VerifyRow> verify_bounds(const VerifyGrid& grid) {
    if (grid.samples < kMinMcSamples) {
        throw ConfigError("verify: need at least " + std::to_string(kMinMcSamples) + " samples");
    }
    std::vector<VerifyRow> rows;
    for (SchemeId scheme : grid.schemes) {
        for (long m : grid.m_values) {
            if (!is_valid_m(scheme, m)) continue;
            for (const FadingModel& fading : grid.fadings) {
                for (double gb : grid.gamma_bars) {
                    VerifyRow row;
                    row.scheme = scheme;
                    row.m = m;
                    row.fading = fading;
                    row.gamma_bar = gb;
                    RngStream stream(grid.seed, cell_stream_id(scheme, m, fading, gb));
                    try {
                        row.bound = grid.bound_scale * design_avg_ser(scheme, m, fading, gb);
                        row.exact = gb > 0.0 ? quad_avg_ser(scheme, m, fading, gb)
                                             : conditional_ser(scheme, m, 0.0);
                        row.mc = mc_avg_ser(scheme, m, fading, gb, grid.samples, stream);
                        row.pass = row.bound >= row.exact - grid.quad_tolerance &&
                                   row.bound >= row.mc.mean - row.mc.half_width_95;
                    } catch (const NumericalFailure& e) {
                        row.pass = false;
                        row.error = e.what();
                    }
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    return rows;
}

}  // namespace greenlink
