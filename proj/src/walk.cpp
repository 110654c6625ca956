#include "hyperwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "hyperwalk/kernels.hpp"

namespace hyperwalk::walk {

int max_state_dim() {
    static const int cap = [] {
        int v = kDefaultMaxStateDim;
        if (const char* env = std::getenv("HYPERWALK_MAX_N")) {
            char* end = nullptr;
            const long parsed = std::strtol(env, &end, 10);
            if (end && *end == '\0') v = int(parsed);
        }
        return std::max(2, std::min(v, 28));
    }();
    return cap;
}

namespace {

void check_dim(int n) {
    if (n < 2) throw std::invalid_argument("hypercube dimension must be at least 2, got " + std::to_string(n));
    if (n > max_state_dim())
        throw std::invalid_argument("state-vector dimension " + std::to_string(n) + " exceeds cap " +
                                    std::to_string(max_state_dim()));
}

struct StepScratch {
    std::vector<double> sum;                  // 2 * 2^n doubles
    std::vector<std::complex<double>> mixed;  // generic-coin output planes
};

StepScratch& scratch() {
    thread_local StepScratch s;
    return s;
}

}  // namespace

bool CoinMatrix::is_unitary(double tol) const {
    // real entries, so unitarity reduces to C * C^T = I
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double dot = 0.0;
            for (int k = 0; k < n; ++k) dot += at(i, k) * at(j, k);
            if (std::fabs(dot - (i == j ? 1.0 : 0.0)) > tol) return false;
        }
    }
    return true;
}

double WalkerState::norm_sq() const {
    const double* d = reinterpret_cast<const double*>(amps.data());
    return kernels::active().sum_sq(d, 2 * amps.size());
}

CoinMatrix grover_coin(int n) {
    check_dim(n);
    CoinMatrix c;
    c.n = n;
    c.kind = CoinKind::grover;
    c.entries.assign(std::size_t(n) * n, 2.0 / n);
    for (int i = 0; i < n; ++i) c.entries[std::size_t(i) * n + i] -= 1.0;
    return c;
}

WalkerState initial_state_symmetric(int n, std::size_t vertex) {
    check_dim(n);
    WalkerState s;
    s.n = n;
    s.amps.assign(std::size_t(n) << n, {0.0, 0.0});
    if (vertex >= s.num_vertices()) throw std::invalid_argument("vertex out of range");
    const double a = 1.0 / std::sqrt(double(n));
    for (int j = 0; j < n; ++j) s.at(j, vertex) = a;
    return s;
}

WalkerState initial_state_uniform_full(int n) {
    check_dim(n);
    WalkerState s;
    s.n = n;
    const double a = 1.0 / std::sqrt(double(n) * double(std::size_t{1} << n));
    s.amps.assign(std::size_t(n) << n, {a, 0.0});
    return s;
}

WalkerState initial_state_basis(int n, int coin, std::size_t vertex) {
    check_dim(n);
    if (coin < 0 || coin >= n) throw std::invalid_argument("coin index out of range");
    WalkerState s;
    s.n = n;
    s.amps.assign(std::size_t(n) << n, {0.0, 0.0});
    if (vertex >= s.num_vertices()) throw std::invalid_argument("vertex out of range");
    s.at(coin, vertex) = 1.0;
    return s;
}

void step_inplace(WalkerState& state, const CoinMatrix& coin, const EdgeMask& mask) {
    const int n = state.n;
    if (coin.n != n) throw std::invalid_argument("coin dimension does not match state");
    if (!mask.empty() && mask.dim() != n) throw std::invalid_argument("mask dimension does not match state");
    const std::size_t nv = state.num_vertices();
    const std::size_t plane_len = 2 * nv;
    const auto& k = kernels::active();

    if (coin.kind == CoinKind::grover) {
        // C v = (2/n) (sum_j v_j) - v, per vertex
        auto& s = scratch().sum;
        s.assign(plane_len, 0.0);
        for (int j = 0; j < n; ++j) k.add(s.data(), state.plane(j), plane_len);
        for (int j = 0; j < n; ++j) k.reflect(state.plane(j), s.data(), 2.0 / n, plane_len);
    } else {
        auto& mixed = scratch().mixed;
        mixed.assign(state.amps.size(), {0.0, 0.0});
        for (int i = 0; i < n; ++i) {
            double* out = reinterpret_cast<double*>(mixed.data()) + std::size_t(i) * plane_len;
            for (int j = 0; j < n; ++j) {
                const double c = coin.at(i, j);
                if (c != 0.0) k.axpy(out, c, state.plane(j), plane_len);
            }
        }
        state.amps.swap(mixed);
    }

    for (int j = 0; j < n; ++j) {
        k.shift_plane_masked(state.plane(j), nv, unsigned(j), mask.plane(unsigned(j)));
    }
}

WalkerState step(const WalkerState& state, const CoinMatrix& coin, const EdgeMask& mask) {
    WalkerState out = state;
    step_inplace(out, coin, mask);
    return out;
}

WalkerState step(const WalkerState& state, const CoinMatrix& coin) {
    return step(state, coin, EdgeMask{});
}

void position_distribution_into(const WalkerState& state, double* probs) {
    const std::size_t nv = state.num_vertices();
    std::memset(probs, 0, nv * sizeof(double));
    const auto& k = kernels::active();
    for (int j = 0; j < state.n; ++j) k.probs_accum(probs, state.plane(j), nv);
}

Distribution position_distribution(const WalkerState& state) {
    Distribution d;
    d.n = state.n;
    d.probs.resize(state.num_vertices());
    position_distribution_into(state, d.probs.data());
    return d;
}

}  // namespace hyperwalk::walk
