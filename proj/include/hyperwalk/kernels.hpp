#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops shared by the walk, spectral and metrics layers.
// Every kernel exists in a scalar reference version and (on x86-64) an AVX2
// version; the two are equivalence-tested against each other. Dispatch is
// resolved once at startup, overridable with HYPERWALK_KERNELS=scalar|avx2.
//
// Complex arrays are interleaved re/im doubles. A "plane" is the amplitude
// slice of one coin direction: num_vertices complex values.

namespace hyperwalk::kernels {

struct Backend {
    const char* name;

    // y[i] += x[i]
    void (*add)(double* y, const double* x, std::size_t len);
    // y[i] += a * x[i]
    void (*axpy)(double* y, double a, const double* x, std::size_t len);
    // x[i] *= a
    void (*scale)(double* x, double a, std::size_t len);
    // y[i] = a * s[i] - y[i]   (Grover reflection about the coin-summed plane)
    void (*reflect)(double* y, const double* s, double a, std::size_t len);

    double (*sum)(const double* x, std::size_t len);
    double (*sum_sq)(const double* x, std::size_t len);
    // sum_i |a[i] - b[i]|
    double (*l1_diff)(const double* a, const double* b, std::size_t len);

    // probs[v] += re(plane[v])^2 + im(plane[v])^2
    void (*probs_accum)(double* probs, const double* plane, std::size_t num_vertices);

    // In-place Walsh-Hadamard butterflies (a,b) -> (a+b, a-b) over spans
    // first_span, 2*first_span, ... < len. len and first_span are powers of
    // two. first_span=1 transforms a real array; first_span=2 transforms an
    // interleaved complex array of len/2 values.
    void (*fwht)(double* data, std::size_t len, std::size_t first_span);

    // Elementwise swap of two non-overlapping ranges.
    void (*swap_ranges)(double* a, double* b, std::size_t len);
    // Swap complex pairs (2v, 2v+1) within a plane. num_vertices is even.
    void (*swap_adjacent)(double* plane, std::size_t num_vertices);

    // Coin-conditioned shift of one plane along hypercube direction `bit`:
    // swaps complex values at x and x^(1<<bit) for every x with that bit
    // clear, except where mask marks the edge broken (bit x of mask, indexed
    // from the endpoint with the direction bit clear). mask == nullptr means
    // all links closed.
    void (*shift_plane_masked)(double* plane, std::size_t num_vertices, unsigned bit,
                               const std::uint64_t* mask);
};

const Backend& scalar();

// nullptr when the build or the CPU lacks AVX2.
const Backend* avx2();

// Backend selected at startup (env override HYPERWALK_KERNELS).
const Backend& active();

}  // namespace hyperwalk::kernels
