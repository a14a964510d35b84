#include "greenlink/linkbudget.hpp"

#include <cmath>
#include <sstream>

#include "greenlink/errors.hpp"
#include "greenlink/special_functions.hpp"

namespace greenlink {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double path_gain(const LinkBudget& lb) {
    if (!(lb.distance_m > 0.0)) throw DomainError("path_gain: distance must be > 0");
    if (!(lb.gain_margin > 0.0) || !(lb.reference_gain > 0.0)) {
        throw DomainError("path_gain: gain margin and reference gain must be > 0");
    }
    return lb.gain_margin * std::pow(lb.distance_m, lb.path_loss_exponent) * lb.reference_gain;
}

double mean_square_gain(const FadingModel& fading) {
    return std::visit([](const auto& f) { return f.omega; }, fading);
}

bool is_rayleigh(const FadingModel& fading) {
    return std::visit(Overloaded{[](const Rayleigh&) { return true; },
                                 [](const Rician& r) { return r.k == 0.0; },
                                 [](const Awgn&) { return false; }},
                      fading);
}

void validate(const FadingModel& fading) {
    if (!(mean_square_gain(fading) > 0.0) || !std::isfinite(mean_square_gain(fading))) {
        throw ConfigError("fading: omega must be finite and > 0");
    }
    if (const auto* r = std::get_if<Rician>(&fading); r && !(r->k >= 0.0 && std::isfinite(r->k))) {
        throw ConfigError("fading: Rician K must be finite and >= 0");
    }
}

std::string describe(const FadingModel& fading) {
    return std::visit(Overloaded{[](const Rayleigh&) { return std::string("rayleigh"); },
                                 [](const Rician& r) {
                                     std::ostringstream os;
                                     os.precision(6);
                                     os << "rician(k=" << r.k << ")";
                                     return os.str();
                                 },
                                 [](const Awgn&) { return std::string("awgn"); }},
                      fading);
}

AvgSnr avg_snr(const LinkBudget& lb, const FadingModel& fading, double symbol_energy_j) {
    if (!(symbol_energy_j >= 0.0)) throw DomainError("avg_snr: symbol energy must be >= 0");
    if (!(lb.noise_psd > 0.0)) throw DomainError("avg_snr: noise PSD must be > 0");
    return {mean_square_gain(fading) / path_gain(lb) * symbol_energy_j / lb.noise_psd};
}

double snr_pdf(const FadingModel& fading, double gamma_bar, double gamma) {
    if (!(gamma >= 0.0)) throw DomainError("snr_pdf: gamma must be >= 0");
    if (!(gamma_bar > 0.0)) throw DomainError("snr_pdf: gamma_bar must be > 0");
    return std::visit(
        Overloaded{[&](const Rayleigh&) { return std::exp(-gamma / gamma_bar) / gamma_bar; },
                   [&](const Rician& r) {
                       const double k = r.k;
                       const double scale = (1.0 + k) / gamma_bar;
                       const double root = std::sqrt(scale * gamma);
                       const double los = std::sqrt(k);
                       // -K - scale*g + z = -(sqrt(scale*g) - sqrt(K))^2 with I0(z) = I0e(z) e^z.
                       const double gap = root - los;
                       return scale * std::exp(-gap * gap) * bessel_i0e(2.0 * los * root);
                   },
                   [](const Awgn&) -> double {
                       throw DomainError("snr_pdf: AWGN SNR is a point mass, no density");
                   }},
        fading);
}

double fading_mgf(const FadingModel& fading, double gamma_bar, double s) {
    if (!(s >= 0.0)) throw DomainError("fading_mgf: s must be >= 0");
    if (!(gamma_bar >= 0.0)) throw DomainError("fading_mgf: gamma_bar must be >= 0");
    return std::visit(Overloaded{[&](const Rayleigh&) { return 1.0 / (1.0 + s * gamma_bar); },
                                 [&](const Rician& r) {
                                     const double k = r.k;
                                     const double denom = 1.0 + k + s * gamma_bar;
                                     return (1.0 + k) / denom * std::exp(-k * s * gamma_bar / denom);
                                 },
                                 [&](const Awgn&) { return std::exp(-s * gamma_bar); }},
                      fading);
}

}  // namespace greenlink
