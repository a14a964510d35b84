#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "greenlink/linkbudget.hpp"

namespace greenlink {

enum class SchemeId { NcMfsk, CoherentMfsk, Mqam, Doqpsk, Ook, Mppm };

inline constexpr std::array<SchemeId, 6> kAllSchemes = {
    SchemeId::NcMfsk, SchemeId::CoherentMfsk, SchemeId::Mqam,
    SchemeId::Doqpsk, SchemeId::Ook,          SchemeId::Mppm};

enum class SchemeCategory { PassBand, Uwb };

std::string_view to_string(SchemeId scheme);
std::optional<SchemeId> scheme_from_string(std::string_view name);
SchemeCategory category(SchemeId scheme);

// DOQPSK and OOK carry a fixed two-point alphabet (M = 2).
bool is_fixed_rate(SchemeId scheme);

// M a power of two (>= 2); MQAM additionally a power of four; fixed-rate schemes M = 2.
bool is_valid_m(SchemeId scheme, long m);
void validate_m(SchemeId scheme, long m);

struct SchemeConfig {
    SchemeId scheme = SchemeId::NcMfsk;
    long m = 2;
    long payload_bits = 8192;
    double bandwidth_hz = 62500.0;
    double frame_period_s = 1.4;
    double transient_s = 5e-6;
    double target_ser = 1e-3;  // target BER for OOK
    double ook_duty = 0.5;     // T_p / T_s
};

void validate(const SchemeConfig& cfg);

// Block power draws in watts.
struct CircuitProfile {
    double p_sy = 0.0;
    double p_filt_tx = 0.0;
    double p_filt_rx = 0.0;
    double p_lna = 0.0;
    double p_ed = 0.0;
    double p_ifa = 0.0;
    double p_adc = 0.0;
    double p_dac = 0.0;
    double p_mix = 0.0;
    double p_pg = 0.0;
    double p_int = 0.0;
    double alpha_fixed = 0.33;  // class-B amplifier overhead

    static CircuitProfile pass_band();
    static CircuitProfile uwb();
    static CircuitProfile defaults_for(SchemeCategory c);

    bool operator==(const CircuitProfile&) const = default;
};

void validate(const CircuitProfile& profile);

// Amplifier-free circuit power split by node. For OOK `tx` is the pulse
// generator only (the transmit filter runs per "1" pulse); for M-PPM `tx`
// runs only during the pulse slot of each symbol.
struct CircuitPower {
    double tx = 0.0;
    double rx = 0.0;
    double total() const { return tx + rx; }
};

struct EnergyBreakdown {
    double t_active_s = 0.0;
    double symbol_energy_j = 0.0;
    double transmit_j = 0.0;
    double circuit_j = 0.0;
    double transient_j = 0.0;
    double total_j = 0.0;
    bool feasible = false;
    double gamma_bar_required = 0.0;
};

enum class AveragingMethod { MgfBound, QuadratureExact };

double bandwidth_efficiency(SchemeId scheme, long m, double ook_duty = 0.5);

double active_duration(const SchemeConfig& cfg);

// Symbol error probability conditioned on instantaneous SNR gamma.
//   NcMfsk, Mppm   exact noncoherent orthogonal SER
//   CoherentMfsk   exact coherent orthogonal SER (64-node Gauss-Hermite)
//   Mqam           exact square-QAM SER
//   Doqpsk         two-symbol-observation Marcum-Q expression
//   Ook            (1/2) exp(-gamma / 2)
double conditional_ser(SchemeId scheme, long m, double gamma);

// Rayleigh closed-form SER bounds, clamped to 1.
double avg_ser_closed(SchemeId scheme, long m, double gamma_bar);
// Same, rejecting anything that is not Rayleigh (or Rician with K = 0).
double avg_ser_closed(SchemeId scheme, long m, const FadingModel& fading, double gamma_bar);

// MgfBound: the scheme's exponential conditional bound c * exp(-s gamma)
// averaged in closed form through fading_mgf. QuadratureExact: conditional_ser
// integrated against snr_pdf.
double avg_ser_general(SchemeId scheme, long m, const FadingModel& fading, double gamma_bar,
                       AveragingMethod method);

// The averaged-SER expression the energy model inverts: the Rayleigh closed
// form for Rayleigh-distributed SNR, the MGF bound otherwise.
double design_avg_ser(SchemeId scheme, long m, const FadingModel& fading, double gamma_bar);

// Transmit energy per symbol E_t meeting cfg.target_ser with the upper bound
// taken as equality. Rayleigh inverts the closed form exactly; other fading
// bisects on design_avg_ser (or the exact average for QuadratureExact) to
// 1e-9 relative error in the SER.
double required_symbol_energy(const SchemeConfig& cfg, const LinkBudget& lb,
                              const FadingModel& fading,
                              AveragingMethod method = AveragingMethod::MgfBound);

double amplifier_alpha(SchemeId scheme, long m, double alpha_fixed = 0.33);

CircuitPower circuit_power(SchemeId scheme, long m, const CircuitProfile& profile);

EnergyBreakdown total_energy(const SchemeConfig& cfg, const LinkBudget& lb,
                             const FadingModel& fading, const CircuitProfile& profile,
                             AveragingMethod method = AveragingMethod::MgfBound);

// OOK frame energy when the payload holds `ones` one-bits.
double ook_total_energy_sampled(const SchemeConfig& cfg, const LinkBudget& lb,
                                const FadingModel& fading, const CircuitProfile& profile,
                                long ones);

struct MaxConstellation {
    int b_max = 0;
    long m_max = 0;
};

// Largest b with active_duration(M = 2^b) <= T_N - T_tr, for NcMfsk,
// CoherentMfsk and Mppm. cfg.m is ignored.
MaxConstellation max_constellation(const SchemeConfig& cfg);

}  // namespace greenlink
