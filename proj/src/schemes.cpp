#include "greenlink/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "greenlink/bisect.hpp"
#include "greenlink/errors.hpp"
#include "greenlink/orthogonal_ser.hpp"
#include "greenlink/special_functions.hpp"

namespace greenlink {
namespace {

constexpr double kMw = 1e-3;
constexpr double kMqamDrainEfficiency = 0.35;

// sqrt((1 + sqrt 2) / 2), the DOQPSK bound prefactor.
const double kDoqpskC = std::sqrt((1.0 + std::numbers::sqrt2) / 2.0);
constexpr double kDoqpskRate = (2.0 - std::numbers::sqrt2) / 4.0;

bool is_power_of_two(long m) { return m >= 2 && (m & (m - 1)) == 0; }

int log2_exact(long m) {
    int b = 0;
    while ((1L << b) < m) ++b;
    return b;
}

double bits_per_symbol(long m) { return static_cast<double>(log2_exact(m)); }

// Exponential conditional bound c * exp(-s gamma) for each scheme.
struct ExpBound {
    double c;
    double s;
};

ExpBound exp_bound(SchemeId scheme, long m) {
    const double md = static_cast<double>(m);
    switch (scheme) {
        case SchemeId::NcMfsk:
        case SchemeId::CoherentMfsk:
        case SchemeId::Mppm:
            return {(md - 1.0) / 2.0, 0.5};
        case SchemeId::Mqam:
            return {2.0 * (1.0 - 1.0 / std::sqrt(md)), 3.0 / (2.0 * (md - 1.0))};
        case SchemeId::Doqpsk:
            return {kDoqpskC, kDoqpskRate};
        case SchemeId::Ook:
            return {0.5, 0.5};
    }
    throw ConfigError("unknown scheme");
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

// Closed-form Rayleigh E_t coefficient (multiplies L_d N_0 / Omega).
double rayleigh_energy_coefficient(SchemeId scheme, long m, double p) {
    const double md = static_cast<double>(m);
    switch (scheme) {
        case SchemeId::NcMfsk: {
            // 1 - (1 - P)^{1/(M-1)} without cancellation.
            const double root_gap = -std::expm1(std::log1p(-p) / (md - 1.0));
            return 1.0 / root_gap - 2.0;
        }
        case SchemeId::CoherentMfsk:
        case SchemeId::Mppm:
            return (md - 1.0) / p - 2.0;
        case SchemeId::Mqam:
            return 2.0 * (md - 1.0) / 3.0 * (2.0 * (1.0 - 1.0 / std::sqrt(md)) / p - 1.0);
        case SchemeId::Doqpsk:
            return (4.0 / p * kDoqpskC - 4.0) / (2.0 - std::numbers::sqrt2);
        case SchemeId::Ook:
            return 1.0 / p - 2.0;
    }
    throw ConfigError("unknown scheme");
}

double link_scale(const LinkBudget& lb, const FadingModel& fading) {
    return path_gain(lb) * lb.noise_psd / mean_square_gain(fading);
}

// Symbols (or pulses, for OOK) carrying the payload.
double transmissions_per_frame(const SchemeConfig& cfg) {
    const double n = static_cast<double>(cfg.payload_bits);
    switch (cfg.scheme) {
        case SchemeId::Doqpsk:
            return n / 2.0;
        case SchemeId::Ook:
            return n / 2.0;  // expected number of ones
        default:
            return n / bits_per_symbol(cfg.m);
    }
}

double transient_energy(SchemeId scheme, const CircuitProfile& p, double t_tr) {
    switch (scheme) {
        case SchemeId::NcMfsk:
        case SchemeId::CoherentMfsk:
            return 1.75 * p.p_sy * t_tr;
        case SchemeId::Mqam:
        case SchemeId::Doqpsk:
            return 2.0 * p.p_sy * t_tr;
        case SchemeId::Ook:
        case SchemeId::Mppm:
            return 2.0 * p.p_pg * t_tr;
    }
    throw ConfigError("unknown scheme");
}

double circuit_energy(const SchemeConfig& cfg, const CircuitProfile& profile, double t_ac,
                      double ones) {
    const CircuitPower pc = circuit_power(cfg.scheme, cfg.m, profile);
    switch (cfg.scheme) {
        case SchemeId::Ook:
            return pc.total() * t_ac + ones / cfg.bandwidth_hz * profile.p_filt_tx;
        case SchemeId::Mppm: {
            const double pulse_time = static_cast<double>(cfg.payload_bits) /
                                      (cfg.bandwidth_hz * bits_per_symbol(cfg.m));
            return pc.tx * pulse_time + pc.rx * t_ac;
        }
        default:
            return pc.total() * t_ac;
    }
}

}  // namespace

std::string_view to_string(SchemeId scheme) {
    switch (scheme) {
        case SchemeId::NcMfsk: return "nc_mfsk";
        case SchemeId::CoherentMfsk: return "coherent_mfsk";
        case SchemeId::Mqam: return "mqam";
        case SchemeId::Doqpsk: return "doqpsk";
        case SchemeId::Ook: return "ook";
        case SchemeId::Mppm: return "mppm";
    }
    return "unknown";
}

std::optional<SchemeId> scheme_from_string(std::string_view name) {
    for (SchemeId s : kAllSchemes) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

SchemeCategory category(SchemeId scheme) {
    return (scheme == SchemeId::Ook || scheme == SchemeId::Mppm) ? SchemeCategory::Uwb
                                                                 : SchemeCategory::PassBand;
}

bool is_fixed_rate(SchemeId scheme) {
    return scheme == SchemeId::Doqpsk || scheme == SchemeId::Ook;
}

bool is_valid_m(SchemeId scheme, long m) {
    if (!is_power_of_two(m)) return false;
    if (m > (1L << 40)) return false;
    if (is_fixed_rate(scheme)) return m == 2;
    if (scheme == SchemeId::Mqam) return log2_exact(m) % 2 == 0;
    return true;
}

void validate_m(SchemeId scheme, long m) {
    if (is_valid_m(scheme, m)) return;
    std::string why = "M=" + std::to_string(m) + " is not valid for " + std::string(to_string(scheme));
    if (is_fixed_rate(scheme)) {
        why += " (fixed-rate scheme, M must be 2)";
    } else if (scheme == SchemeId::Mqam) {
        why += " (M must be a power of 4)";
    } else {
        why += " (M must be a power of 2, >= 2)";
    }
    throw ConfigError(why);
}

void validate(const SchemeConfig& cfg) {
    validate_m(cfg.scheme, cfg.m);
    if (cfg.payload_bits <= 0) throw ConfigError("payload_bits must be > 0");
    if (!(cfg.bandwidth_hz > 0.0) || !std::isfinite(cfg.bandwidth_hz)) {
        throw ConfigError("bandwidth_hz must be finite and > 0");
    }
    if (!(cfg.frame_period_s > 0.0) || !std::isfinite(cfg.frame_period_s)) {
        throw ConfigError("frame_period_s must be finite and > 0");
    }
    if (!(cfg.transient_s >= 0.0) || !(cfg.transient_s < cfg.frame_period_s)) {
        throw ConfigError("transient_s must satisfy 0 <= T_tr < T_N");
    }
    if (!(cfg.target_ser > 0.0 && cfg.target_ser < 1.0)) {
        throw ConfigError("target_ser must lie in (0, 1)");
    }
    if (!(cfg.ook_duty > 0.0 && cfg.ook_duty <= 1.0)) {
        throw ConfigError("ook_duty must lie in (0, 1]");
    }
}

CircuitProfile CircuitProfile::pass_band() {
    CircuitProfile p;
    p.p_sy = 10.0 * kMw;
    p.p_filt_tx = 2.5 * kMw;
    p.p_filt_rx = 2.5 * kMw;
    p.p_lna = 9.0 * kMw;
    p.p_ed = 3.0 * kMw;
    p.p_ifa = 3.0 * kMw;
    p.p_adc = 7.0 * kMw;
    p.p_dac = 7.0 * kMw;
    p.p_mix = 7.0 * kMw;
    return p;
}

CircuitProfile CircuitProfile::uwb() {
    CircuitProfile p;
    p.p_pg = 0.675 * kMw;
    p.p_lna = 3.1 * kMw;
    p.p_ed = 3.0 * kMw;
    p.p_filt_tx = 2.5 * kMw;
    p.p_filt_rx = 2.5 * kMw;
    p.p_adc = 7.0 * kMw;
    p.p_int = 3.0 * kMw;
    return p;
}

CircuitProfile CircuitProfile::defaults_for(SchemeCategory c) {
    return c == SchemeCategory::Uwb ? uwb() : pass_band();
}

void validate(const CircuitProfile& p) {
    for (double w : {p.p_sy, p.p_filt_tx, p.p_filt_rx, p.p_lna, p.p_ed, p.p_ifa, p.p_adc, p.p_dac,
                     p.p_mix, p.p_pg, p.p_int, p.alpha_fixed}) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw ConfigError("circuit powers and alpha must be finite and >= 0");
        }
    }
}

double bandwidth_efficiency(SchemeId scheme, long m, double ook_duty) {
    validate_m(scheme, m);
    const double b = bits_per_symbol(m);
    const double md = static_cast<double>(m);
    switch (scheme) {
        case SchemeId::NcMfsk: return b / md;
        case SchemeId::CoherentMfsk: return 2.0 * b / md;
        case SchemeId::Mqam: return 2.0 * b;
        case SchemeId::Doqpsk: return 2.0;
        case SchemeId::Ook:
            if (!(ook_duty > 0.0 && ook_duty <= 1.0)) throw ConfigError("ook_duty must lie in (0, 1]");
            return ook_duty;
        case SchemeId::Mppm: return b / md;
    }
    throw ConfigError("unknown scheme");
}

double active_duration(const SchemeConfig& cfg) {
    validate(cfg);
    const double n = static_cast<double>(cfg.payload_bits);
    const double b = bits_per_symbol(cfg.m);
    const double md = static_cast<double>(cfg.m);
    const double bw = cfg.bandwidth_hz;
    switch (cfg.scheme) {
        case SchemeId::NcMfsk: return md * n / (bw * b);
        case SchemeId::CoherentMfsk: return md * n / (2.0 * bw * b);
        case SchemeId::Mqam: return n / (2.0 * bw * b);
        case SchemeId::Doqpsk: return n / (2.0 * bw);
        case SchemeId::Ook: return n / (cfg.ook_duty * bw);
        case SchemeId::Mppm: return md * n / (bw * b);
    }
    throw ConfigError("unknown scheme");
}

double conditional_ser(SchemeId scheme, long m, double gamma) {
    validate_m(scheme, m);
    if (!(gamma >= 0.0)) throw DomainError("conditional_ser: gamma must be >= 0");
    const double md = static_cast<double>(m);
    switch (scheme) {
        case SchemeId::NcMfsk:
        case SchemeId::Mppm:
            return noncoherent_orthogonal_ser(m, gamma);
        case SchemeId::CoherentMfsk:
            return coherent_orthogonal_ser_tabulated(m, gamma);
        case SchemeId::Mqam: {
            const double c = 1.0 - 1.0 / std::sqrt(md);
            const double q = gaussian_q(std::sqrt(3.0 * gamma / (md - 1.0)));
            return clamp_probability(4.0 * c * q - 4.0 * c * c * q * q);
        }
        case SchemeId::Doqpsk: {
            const double a = std::sqrt((2.0 + std::numbers::sqrt2) / 4.0 * gamma);
            const double b = std::sqrt(kDoqpskRate * gamma);
            return clamp_probability(marcum_q1_complement(a, b) + marcum_q1(b, a));
        }
        case SchemeId::Ook:
            return 0.5 * std::exp(-0.5 * gamma);
    }
    throw ConfigError("unknown scheme");
}

double avg_ser_closed(SchemeId scheme, long m, double gamma_bar) {
    validate_m(scheme, m);
    if (!(gamma_bar >= 0.0)) throw DomainError("avg_ser_closed: gamma_bar must be >= 0");
    const double md = static_cast<double>(m);
    const double g = gamma_bar;
    double p = 0.0;
    switch (scheme) {
        case SchemeId::NcMfsk:
            p = -std::expm1((md - 1.0) * std::log1p(-1.0 / (2.0 + g)));
            break;
        case SchemeId::CoherentMfsk:
        case SchemeId::Mppm:
            p = (md - 1.0) / (g + 2.0);
            break;
        case SchemeId::Mqam:
            p = 4.0 * (md - 1.0) / (3.0 * g + 2.0 * (md - 1.0)) * (1.0 - 1.0 / std::sqrt(md));
            break;
        case SchemeId::Doqpsk:
            p = kDoqpskC * 4.0 / ((2.0 - std::numbers::sqrt2) * g + 4.0);
            break;
        case SchemeId::Ook:
            p = 1.0 / (g + 2.0);
            break;
    }
    return clamp_probability(p);
}

double avg_ser_closed(SchemeId scheme, long m, const FadingModel& fading, double gamma_bar) {
    if (!is_rayleigh(fading)) {
        throw UnsupportedFading("avg_ser_closed: closed forms exist for Rayleigh fading only, got " +
                                describe(fading));
    }
    return avg_ser_closed(scheme, m, gamma_bar);
}

double avg_ser_general(SchemeId scheme, long m, const FadingModel& fading, double gamma_bar,
                       AveragingMethod method) {
    validate_m(scheme, m);
    validate(fading);
    if (!(gamma_bar >= 0.0)) throw DomainError("avg_ser_general: gamma_bar must be >= 0");
    if (method == AveragingMethod::MgfBound) {
        const ExpBound eb = exp_bound(scheme, m);
        return clamp_probability(eb.c * fading_mgf(fading, gamma_bar, eb.s));
    }
    QuadratureOptions opts;
    opts.abs_tol = 1e-12;
    opts.rel_tol = 1e-10;
    const auto r = expect_over_fading(fading, gamma_bar,
                                      [&](double g) { return conditional_ser(scheme, m, g); }, opts);
    return clamp_probability(r.value);
}

double design_avg_ser(SchemeId scheme, long m, const FadingModel& fading, double gamma_bar) {
    if (is_rayleigh(fading)) return avg_ser_closed(scheme, m, gamma_bar);
    return avg_ser_general(scheme, m, fading, gamma_bar, AveragingMethod::MgfBound);
}

double required_symbol_energy(const SchemeConfig& cfg, const LinkBudget& lb,
                              const FadingModel& fading, AveragingMethod method) {
    validate(cfg);
    validate(fading);
    const double scale = link_scale(lb, fading);
    const double target = cfg.target_ser;
    const double ray_coef = rayleigh_energy_coefficient(cfg.scheme, cfg.m, target);

    if (method == AveragingMethod::MgfBound && is_rayleigh(fading)) {
        if (ray_coef < 0.0) {
            throw InfeasibleTarget("target error rate " + std::to_string(target) +
                                   " is looser than the zero-SNR bound for " +
                                   std::string(to_string(cfg.scheme)));
        }
        return ray_coef * scale;
    }

    auto ser = [&](double gb) {
        return method == AveragingMethod::MgfBound
                   ? design_avg_ser(cfg.scheme, cfg.m, fading, gb)
                   : avg_ser_general(cfg.scheme, cfg.m, fading, gb, method);
    };
    if (ser(0.0) <= target) {
        throw InfeasibleTarget("target error rate " + std::to_string(target) +
                               " is already met at zero SNR for " +
                               std::string(to_string(cfg.scheme)));
    }
    // log-SER gap; decreasing in gamma_bar.
    auto f = [&](double gb) {
        const double p = ser(gb);
        return p > 0.0 ? std::log(p / target) : -1e300;
    };

    // The Rayleigh answer is only a starting point; it can be negative when
    // the Rayleigh bound never reaches the target.
    const double seed = std::max(ray_coef, 1.0);
    double lo = seed * 1e-3;
    double hi = seed * 1e3;
    double widen = 1e3;
    while (!(f(lo) > 0.0 && f(hi) < 0.0)) {
        widen *= 10.0;
        if (widen > 1e6 * 1.0000001) {
            throw NoSignChange("required_symbol_energy: no bracket within 1e6 of the Rayleigh answer");
        }
        lo = seed / widen;
        hi = seed * widen;
    }
    RootSpec spec;
    spec.lo = lo;
    spec.hi = hi;
    spec.geometric = true;
    spec.rel_tol = 1e-15;
    spec.max_iter = 400;
    spec.f_tol = 1e-10;  // |log(P/target)| ~ relative SER error
    const double gamma_bar = bisect(f, spec);
    return gamma_bar * scale;
}

double amplifier_alpha(SchemeId scheme, long m, double alpha_fixed) {
    validate_m(scheme, m);
    if (scheme == SchemeId::Mqam) {
        const double r = std::sqrt(static_cast<double>(m));
        return 3.0 * (r - 1.0) / ((r + 1.0) * kMqamDrainEfficiency) - 1.0;
    }
    return alpha_fixed;
}

CircuitPower circuit_power(SchemeId scheme, long m, const CircuitProfile& p) {
    validate_m(scheme, m);
    const double md = static_cast<double>(m);
    switch (scheme) {
        case SchemeId::NcMfsk:
            return {p.p_sy + p.p_filt_tx,
                    p.p_lna + md * (p.p_filt_rx + p.p_ed) + p.p_ifa + p.p_adc};
        case SchemeId::CoherentMfsk:
            return {p.p_sy + p.p_filt_tx,
                    p.p_lna + md * (p.p_sy + p.p_mix + p.p_filt_rx) + p.p_ifa + p.p_adc};
        case SchemeId::Mqam:
        case SchemeId::Doqpsk:
            return {p.p_dac + p.p_sy + p.p_mix + p.p_filt_tx,
                    p.p_lna + p.p_mix + p.p_sy + p.p_filt_rx + p.p_ifa + p.p_adc};
        case SchemeId::Ook:
            return {p.p_pg, p.p_lna + p.p_ed + p.p_filt_rx + p.p_int + p.p_adc};
        case SchemeId::Mppm:
            return {p.p_pg + p.p_filt_tx, p.p_lna + md * (p.p_ed + p.p_filt_rx) + p.p_adc};
    }
    throw ConfigError("unknown scheme");
}

EnergyBreakdown total_energy(const SchemeConfig& cfg, const LinkBudget& lb,
                             const FadingModel& fading, const CircuitProfile& profile,
                             AveragingMethod method) {
    validate(cfg);
    validate(profile);
    EnergyBreakdown e;
    e.t_active_s = active_duration(cfg);
    e.symbol_energy_j = required_symbol_energy(cfg, lb, fading, method);
    e.gamma_bar_required = avg_snr(lb, fading, e.symbol_energy_j).value;
    const double alpha = amplifier_alpha(cfg.scheme, cfg.m, profile.alpha_fixed);
    const double count = transmissions_per_frame(cfg);
    e.transmit_j = (1.0 + alpha) * e.symbol_energy_j * count;
    e.circuit_j = circuit_energy(cfg, profile, e.t_active_s, count);
    e.transient_j = transient_energy(cfg.scheme, profile, cfg.transient_s);
    e.total_j = e.transmit_j + e.circuit_j + e.transient_j;
    e.feasible = e.t_active_s <= cfg.frame_period_s - cfg.transient_s;
    return e;
}

double ook_total_energy_sampled(const SchemeConfig& cfg, const LinkBudget& lb,
                                const FadingModel& fading, const CircuitProfile& profile,
                                long ones) {
    if (cfg.scheme != SchemeId::Ook) throw ConfigError("ook_total_energy_sampled: scheme must be ook");
    validate(cfg);
    validate(profile);
    if (ones < 0 || ones > cfg.payload_bits) {
        throw DomainError("ook_total_energy_sampled: ones must lie in [0, N]");
    }
    const double l = static_cast<double>(ones);
    const double t_ac = active_duration(cfg);
    const double e_t = required_symbol_energy(cfg, lb, fading);
    const double transmit = (1.0 + profile.alpha_fixed) * e_t * l;
    const double circuit = circuit_energy(cfg, profile, t_ac, l);
    const double transient = transient_energy(cfg.scheme, profile, cfg.transient_s);
    return transmit + circuit + transient;
}

MaxConstellation max_constellation(const SchemeConfig& cfg) {
    if (cfg.scheme != SchemeId::NcMfsk && cfg.scheme != SchemeId::CoherentMfsk &&
        cfg.scheme != SchemeId::Mppm) {
        throw ConfigError("max_constellation: scheme " + std::string(to_string(cfg.scheme)) +
                          " has no M-dependent active time");
    }
    SchemeConfig probe = cfg;
    probe.m = 2;
    validate(probe);
    const double budget = cfg.frame_period_s - cfg.transient_s;
    if (active_duration(probe) > budget) {
        throw NoFeasibleConfiguration("max_constellation: even M=2 exceeds the frame budget");
    }
    MaxConstellation out{1, 2};
    for (int b = 2; b <= 40; ++b) {
        probe.m = 1L << b;
        if (active_duration(probe) > budget) break;
        out = {b, probe.m};
    }
    return out;
}

}  // namespace greenlink
