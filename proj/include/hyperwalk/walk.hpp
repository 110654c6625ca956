#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "hyperwalk/distribution.hpp"
#include "hyperwalk/edge_mask.hpp"

namespace hyperwalk::walk {

// Walks with a state vector are capped at n=16 by default; HYPERWALK_MAX_N
// raises or lowers the cap (read once, clamped to [2, 28]).
inline constexpr int kDefaultMaxStateDim = 16;
int max_state_dim();

enum class CoinKind { grover, custom };

struct CoinMatrix {
    int n = 0;
    CoinKind kind = CoinKind::custom;
    std::vector<double> entries;  // row-major n x n

    double at(int i, int j) const { return entries[std::size_t(i) * n + j]; }
    bool is_unitary(double tol = 1e-12) const;
};

// Amplitudes psi_{j,x} stored plane-major: plane j holds the 2^n complex
// values of coin direction j.
struct WalkerState {
    int n = 0;
    std::vector<std::complex<double>> amps;

    std::size_t num_vertices() const { return std::size_t{1} << n; }
    std::complex<double>& at(int j, std::size_t x) { return amps[std::size_t(j) * num_vertices() + x]; }
    const std::complex<double>& at(int j, std::size_t x) const {
        return amps[std::size_t(j) * num_vertices() + x];
    }
    double* plane(int j) {
        return reinterpret_cast<double*>(amps.data()) + 2 * std::size_t(j) * num_vertices();
    }
    const double* plane(int j) const {
        return reinterpret_cast<const double*>(amps.data()) + 2 * std::size_t(j) * num_vertices();
    }
    double norm_sq() const;
};

// C_ij = 2/n - delta_ij. Requires n >= 2.
CoinMatrix grover_coin(int n);

// Localized at one vertex (default 0), uniform over coin directions.
WalkerState initial_state_symmetric(int n, std::size_t vertex = 0);

// Uniform over both coin and position; an eigenstate of the coherent step.
WalkerState initial_state_uniform_full(int n);

// All amplitude on coin direction j at vertex x.
WalkerState initial_state_basis(int n, int coin, std::size_t vertex);

// One step: coin first, then the (mask-aware) shift. An empty mask gives the
// coherent walk. In-place; scratch buffers live in thread-local storage.
void step_inplace(WalkerState& state, const CoinMatrix& coin, const EdgeMask& mask);

WalkerState step(const WalkerState& state, const CoinMatrix& coin, const EdgeMask& mask);
WalkerState step(const WalkerState& state, const CoinMatrix& coin);

// P(x) = sum_j |psi_{j,x}|^2.
Distribution position_distribution(const WalkerState& state);
void position_distribution_into(const WalkerState& state, double* probs);

}  // namespace hyperwalk::walk
