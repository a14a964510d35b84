#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "greenlink/linkbudget.hpp"
#include "greenlink/rng.hpp"
#include "greenlink/schemes.hpp"

namespace greenlink {

inline constexpr long kMinMcSamples = 1000;

struct McEstimate {
    double mean = 0.0;
    double half_width_95 = 0.0;  // 1.96 * sample std / sqrt(n)
    long n_samples = 0;
};

// Rayleigh: -gamma_bar ln U.
// Rician:   gamma_bar / (1+K) * ((sqrt K + G1/sqrt 2)^2 + (G2/sqrt 2)^2),
//           G1, G2 consecutive normals of the stream.
// AWGN:     gamma_bar (no draws consumed).
double sample_snr(const FadingModel& fading, double gamma_bar, RngStream& stream);
std::vector<double> sample_snr(const FadingModel& fading, double gamma_bar, long n,
                               RngStream& stream);

// Sample mean of conditional_ser over n SNR draws. Throws ConfigError if n < 1000.
McEstimate mc_avg_ser(SchemeId scheme, long m, const FadingModel& fading, double gamma_bar,
                      long n, RngStream& stream);

// Adaptive quadrature of conditional_ser against snr_pdf on gamma = gamma_bar t/(1-t).
double quad_avg_ser(SchemeId scheme, long m, const FadingModel& fading, double gamma_bar);

// Mean of an arbitrary statistic with its 95% half-width (Welford accumulation).
class RunningStats {
public:
    void add(double x);
    McEstimate estimate() const;

private:
    long n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct VerifyGrid {
    std::vector<SchemeId> schemes{kAllSchemes.begin(), kAllSchemes.end()};
    std::vector<long> m_values{2, 4, 8, 16, 64};
    std::vector<double> gamma_bars{10.0, 100.0, 1000.0};
    std::vector<FadingModel> fadings{Rayleigh{}, Rician{0.0, 1.0}, Rician{10.0, 1.0}};
    long samples = 100000;
    std::uint64_t seed = 42;
    double quad_tolerance = 1e-9;
    // Multiplies every bound before the comparison. Only fault-injection
    // tests change it.
    double bound_scale = 1.0;
};

struct VerifyRow {
    SchemeId scheme = SchemeId::NcMfsk;
    long m = 2;
    FadingModel fading = Rayleigh{};
    double gamma_bar = 0.0;
    double bound = 0.0;
    double exact = 0.0;
    McEstimate mc;
    bool pass = false;
    std::string error;  // non-empty when a numerical failure hit this cell
};

// Stream id of a verify cell: a hash of (scheme, M, fading kind, K, gamma_bar),
// so a cell draws the same samples whatever else is in the grid.
std::uint64_t cell_stream_id(SchemeId scheme, long m, const FadingModel& fading, double gamma_bar);

// Every (scheme, valid M, fading, gamma_bar) cell in declaration order, each
// sampled from RngStream(grid.seed, cell_stream_id(...)). Never aborts early.
std::vector<VerifyRow> verify_bounds(const VerifyGrid& grid);

}  // namespace greenlink
