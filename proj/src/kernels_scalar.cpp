#include "hyperwalk/kernels.hpp"

#include <cmath>

namespace hyperwalk::kernels {
namespace {

void k_add(double* y, const double* x, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) y[i] += x[i];
}

void k_axpy(double* y, double a, const double* x, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) y[i] += a * x[i];
}

void k_scale(double* x, double a, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) x[i] *= a;
}

void k_reflect(double* y, const double* s, double a, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) y[i] = a * s[i] - y[i];
}

double k_sum(const double* x, std::size_t len) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) acc += x[i];
    return acc;
}

double k_sum_sq(const double* x, std::size_t len) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) acc += x[i] * x[i];
    return acc;
}

double k_l1_diff(const double* a, const double* b, std::size_t len) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) acc += std::fabs(a[i] - b[i]);
    return acc;
}

void k_probs_accum(double* probs, const double* plane, std::size_t num_vertices) {
    for (std::size_t v = 0; v < num_vertices; ++v) {
        const double re = plane[2 * v];
        const double im = plane[2 * v + 1];
        probs[v] += re * re + im * im;
    }
}

void k_fwht(double* data, std::size_t len, std::size_t first_span) {
    for (std::size_t span = first_span; span < len; span <<= 1) {
        for (std::size_t base = 0; base < len; base += 2 * span) {
            for (std::size_t i = base; i < base + span; ++i) {
                const double a = data[i];
                const double b = data[i + span];
                data[i] = a + b;
                data[i + span] = a - b;
            }
        }
    }
}

void k_swap_ranges(double* a, double* b, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
        const double t = a[i];
        a[i] = b[i];
        b[i] = t;
    }
}

void k_swap_adjacent(double* plane, std::size_t num_vertices) {
    for (std::size_t v = 0; v < num_vertices; v += 2) {
        k_swap_ranges(plane + 2 * v, plane + 2 * v + 2, 2);
    }
}

inline bool edge_broken(const std::uint64_t* mask, std::size_t x) {
    return (mask[x >> 6] >> (x & 63)) & 1u;
}

void k_shift_plane_masked(double* plane, std::size_t num_vertices, unsigned bit,
                          const std::uint64_t* mask) {
    const std::size_t stride = std::size_t{1} << bit;
    for (std::size_t base = 0; base < num_vertices; base += 2 * stride) {
        for (std::size_t x = base; x < base + stride; ++x) {
            if (mask && edge_broken(mask, x)) continue;
            k_swap_ranges(plane + 2 * x, plane + 2 * (x + stride), 2);
        }
    }
}

constexpr Backend kScalar = {
    "scalar",    k_add,           k_axpy,        k_scale,
    k_reflect,   k_sum,           k_sum_sq,      k_l1_diff,
    k_probs_accum, k_fwht,        k_swap_ranges, k_swap_adjacent,
    k_shift_plane_masked,
};

}  // namespace

const Backend& scalar() { return kScalar; }

}  // namespace hyperwalk::kernels
