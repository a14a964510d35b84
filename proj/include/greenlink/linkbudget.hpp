#pragma once

#include <cmath>
#include <string>
#include <variant>

#include "greenlink/quadrature.hpp"

namespace greenlink {

// Path-loss link between a sensor and its sink. All quantities linear.
struct LinkBudget {
    double distance_m = 10.0;
    double path_loss_exponent = 3.5;
    double gain_margin = 1e4;     // M_l
    double reference_gain = 1e3;  // L_1, gain factor at 1 m (antennas and wavelength folded in)
    double noise_psd = 1e-18;     // N_0, W/Hz
};

// L_d = M_l * d^eta * L_1.
double path_gain(const LinkBudget& lb);

struct Rayleigh {
    double omega = 1.0;
};

// K is linear (LOS power over diffuse power); omega = E|h|^2 = A^2 + 2 sigma^2.
struct Rician {
    double k = 0.0;
    double omega = 1.0;
};

struct Awgn {
    double omega = 1.0;
};

using FadingModel = std::variant<Rayleigh, Rician, Awgn>;

double mean_square_gain(const FadingModel& fading);

// True for Rayleigh and for Rician with K = 0 (same distribution).
bool is_rayleigh(const FadingModel& fading);

// Throws ConfigError for omega <= 0 or K < 0.
void validate(const FadingModel& fading);

std::string describe(const FadingModel& fading);

struct AvgSnr {
    double value = 0.0;
};

// gamma_bar = (omega / L_d) * E_t / N_0.
AvgSnr avg_snr(const LinkBudget& lb, const FadingModel& fading, double symbol_energy_j);

// Received-SNR density at gamma for average SNR gamma_bar. Rayleigh is
// exponential; Rician is the noncentral chi-square (2 DOF) density
//   ((1+K)/gb) exp(-K - (1+K) g/gb) I0(2 sqrt(K (1+K) g / gb)).
// AWGN has no density (point mass at gamma_bar) and throws DomainError.
double snr_pdf(const FadingModel& fading, double gamma_bar, double gamma);

// E[exp(-s gamma)] under the fading SNR distribution.
double fading_mgf(const FadingModel& fading, double gamma_bar, double s);

// E[f(gamma)] by adaptive quadrature against snr_pdf (exact point
// evaluation for AWGN or gamma_bar = 0).
template <class F>
QuadratureResult expect_over_fading(const FadingModel& fading, double gamma_bar, F&& f,
                                    const QuadratureOptions& opts = {}) {
    if (gamma_bar == 0.0 || std::holds_alternative<Awgn>(fading)) {
        return {f(gamma_bar), 0.0, 1};
    }
    auto integrand = [&](double g) {
        const double density = snr_pdf(fading, gamma_bar, g);
        return density == 0.0 ? 0.0 : f(g) * density;
    };
    return integrate_half_line(integrand, gamma_bar, opts);
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace greenlink
