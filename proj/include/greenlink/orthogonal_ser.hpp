#pragma once

// Conditional SER of M-ary orthogonal signalling (MFSK tones, PPM slots).

namespace greenlink {

// Noncoherent (square-law) detection:
//   P_s(g) = sum_{k=1}^{M-1} (-1)^{k+1} / (k+1) C(M-1, k) exp(-k g / (k+1)).
// Uses the alternating sum directly for M <= 16 and the mixture form below
// for larger M, where the binomial terms would cancel catastrophically.
double noncoherent_orthogonal_ser(long m, double gamma);

double noncoherent_orthogonal_ser_alternating(long m, double gamma);

// Same probability through the Poisson(g) mixture of Gamma(j+1, 1) decision
// energies:
//   P_s(g) = (M-1)/2 e^{-g/2} + sum_{j<J} Pois(j; g) d_j,
//   d_j = E_{W~Gamma(j+1)}[1 - (1 - e^{-W})^{M-1} - (M-1) e^{-W}] <= 0,
// with d_j tabulated once per M by adaptive quadrature and J the first index
// where |d_j| falls below 1e-17 of the union term. Every piece is
// sign-definite, so the result keeps full relative accuracy for any M.
double noncoherent_orthogonal_ser_mixture(long m, double gamma);

// Coherent detection:
//   P_s(g) = 1 - integral phi(u) Phi(u + sqrt(2 g))^{M-1} du,
// evaluated as the equivalent integral over the largest wrong-tone output
// with a `nodes`-point Gauss-Hermite rule (64 by default) centred on the
// integrand's mode.
double coherent_orthogonal_ser(long m, double gamma, int nodes = 64);

// The 64-point value interpolated from a per-M table (piecewise Chebyshev in
// sqrt(2 g), built on first use). Within 1e-11 relative of the direct rule.
double coherent_orthogonal_ser_tabulated(long m, double gamma);

}  // namespace greenlink
