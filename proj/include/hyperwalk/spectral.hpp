#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hyperwalk/distribution.hpp"

namespace hyperwalk::spectral {

// Phase of the non-trivial eigenvalue pair e^{+-i omega} of the Fourier
// block with Hamming weight hk: cos(omega) = 1 - 2 hk / n.
double omega(int n, int hk);

// Component j of the unit eigenvector for eigenvalue e^{i omega_k}; defined
// for 1 <= |k| <= n-1 (the weight-0 and weight-n blocks are degenerate).
std::complex<double> alpha(int n, std::uint64_t k, int j);

// Unitary Fourier transform on Z_2^n: out[k] = 2^{-n/2} sum_x (-1)^{k.x} v[x].
// Self-inverse. Length must be a power of two.
std::vector<std::complex<double>> walsh_hadamard(const std::vector<std::complex<double>>& values);

// Stationary distribution of the symmetric coherent walk, evaluated from the
// eigenvector-overlap double sum over same-weight Fourier labels. 2 <= n <= 10.
Distribution stationary_pi_spectral(int n);

// Same distribution from the combinatorial per-Hamming-weight form.
// Weight w entry of the returned vector is pi(x) for any |x| = w. 2 <= n <= 64.
// Dispatches between the two evaluation routes below.
std::vector<double> stationary_pi_weights(int n);

// The quintuple sum exactly as displayed, binomials via log-gamma. The
// alternating inner sums cancel catastrophically for large n; reliable to
// n = 40.
std::vector<double> stationary_pi_weights_direct(int n);

// Same sum with the inner hypergeometric sums closed (Vandermonde), leaving
// short alternating brackets over exact integer binomials; stable on the
// whole supported range.
std::vector<double> stationary_pi_weights_factored(int n);

// Per-weight values broadcast to all 2^n vertices. 2 <= n <= 24.
Distribution stationary_pi_closed(int n);

// pi(0) = 1/4^n + Gamma(n+1/2) / (2 sqrt(pi) n Gamma(n)).
double pi_at_origin(int n);

// p(h) = C(n,h) * pi(x with |x| = h). Verifies the input depends only on
// Hamming weight (tolerance 1e-10) and throws otherwise.
std::vector<double> hamming_profile(const Distribution& pi);

// Profile straight from per-weight values (no 2^n materialization).
std::vector<double> hamming_profile_from_weights(int n, const std::vector<double>& weights);

}  // namespace hyperwalk::spectral
