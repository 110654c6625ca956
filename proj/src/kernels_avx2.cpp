// AVX2 backend. This translation unit is compiled with -mavx2 -mfma and must
// only be reached through the dispatch table after the CPU check.

#include "hyperwalk/kernels.hpp"

#if defined(HYPERWALK_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>

namespace hyperwalk::kernels {
namespace {

void k_add(double* y, const double* x, std::size_t len) {
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
    }
    for (; i < len; ++i) y[i] += x[i];
}

void k_axpy(double* y, double a, const double* x, std::size_t len) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        _mm256_storeu_pd(y + i,
                         _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    }
    for (; i < len; ++i) y[i] += a * x[i];
}

void k_scale(double* x, double a, std::size_t len) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    }
    for (; i < len; ++i) x[i] *= a;
}

void k_reflect(double* y, const double* s, double a, std::size_t len) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        _mm256_storeu_pd(y + i,
                         _mm256_fmsub_pd(va, _mm256_loadu_pd(s + i), _mm256_loadu_pd(y + i)));
    }
    for (; i < len; ++i) y[i] = a * s[i] - y[i];
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s2 = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s2, _mm_unpackhi_pd(s2, s2)));
}

double k_sum(const double* x, std::size_t len) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double r = hsum(acc);
    for (; i < len; ++i) r += x[i];
    return r;
}

double k_sum_sq(const double* x, std::size_t len) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double r = hsum(acc);
    for (; i < len; ++i) r += x[i] * x[i];
    return r;
}

double k_l1_diff(const double* a, const double* b, std::size_t len) {
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, _mm256_and_pd(d, abs_mask));
    }
    double r = hsum(acc);
    for (; i < len; ++i) r += std::fabs(a[i] - b[i]);
    return r;
}

void k_probs_accum(double* probs, const double* plane, std::size_t num_vertices) {
    std::size_t v = 0;
    for (; v + 2 <= num_vertices; v += 2) {
        const __m256d z = _mm256_loadu_pd(plane + 2 * v);  // re0 im0 re1 im1
        const __m256d sq = _mm256_mul_pd(z, z);
        // hadd of (sq, sq): lanes 0,1 -> re0^2+im0^2, lanes 2,3 -> re1^2+im1^2
        const __m256d h = _mm256_hadd_pd(sq, sq);
        probs[v] += _mm_cvtsd_f64(_mm256_castpd256_pd128(h));
        probs[v + 1] += _mm_cvtsd_f64(_mm256_extractf128_pd(h, 1));
    }
    for (; v < num_vertices; ++v) {
        const double re = plane[2 * v];
        const double im = plane[2 * v + 1];
        probs[v] += re * re + im * im;
    }
}

void k_fwht(double* data, std::size_t len, std::size_t first_span) {
    std::size_t span = first_span;
    if (span == 1 && span < len) {
        if (len < 4) {
            const double a = data[0], b = data[1];
            data[0] = a + b;
            data[1] = a - b;
        } else {
            for (std::size_t i = 0; i + 4 <= len; i += 4) {
                const __m256d v = _mm256_loadu_pd(data + i);
                const __m256d t = _mm256_permute_pd(v, 0x5);  // a1 a0 a3 a2
                const __m256d plus = _mm256_add_pd(v, t);
                const __m256d minus = _mm256_sub_pd(t, v);
                _mm256_storeu_pd(data + i, _mm256_blend_pd(plus, minus, 0xA));
            }
        }
        span = 2;
    }
    if (span == 2 && span < len && len >= 4) {
        for (std::size_t i = 0; i + 4 <= len; i += 4) {
            const __m256d v = _mm256_loadu_pd(data + i);
            const __m256d t = _mm256_permute2f128_pd(v, v, 0x01);  // a2 a3 a0 a1
            const __m256d plus = _mm256_add_pd(v, t);
            const __m256d minus = _mm256_sub_pd(t, v);
            _mm256_storeu_pd(data + i, _mm256_blend_pd(plus, minus, 0xC));
        }
        span = 4;
    }
    for (; span < len; span <<= 1) {
        for (std::size_t base = 0; base < len; base += 2 * span) {
            for (std::size_t i = base; i + 4 <= base + span; i += 4) {
                const __m256d a = _mm256_loadu_pd(data + i);
                const __m256d b = _mm256_loadu_pd(data + i + span);
                _mm256_storeu_pd(data + i, _mm256_add_pd(a, b));
                _mm256_storeu_pd(data + i + span, _mm256_sub_pd(a, b));
            }
        }
    }
}

void k_swap_ranges(double* a, double* b, std::size_t len) {
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        const __m256d va = _mm256_loadu_pd(a + i);
        const __m256d vb = _mm256_loadu_pd(b + i);
        _mm256_storeu_pd(a + i, vb);
        _mm256_storeu_pd(b + i, va);
    }
    for (; i < len; ++i) {
        const double t = a[i];
        a[i] = b[i];
        b[i] = t;
    }
}

void k_swap_adjacent(double* plane, std::size_t num_vertices) {
    for (std::size_t v = 0; v + 2 <= num_vertices; v += 2) {
        const __m256d z = _mm256_loadu_pd(plane + 2 * v);
        _mm256_storeu_pd(plane + 2 * v, _mm256_permute4x64_pd(z, 0x4E));
    }
}

inline bool edge_broken(const std::uint64_t* mask, std::size_t x) {
    return (mask[x >> 6] >> (x & 63)) & 1u;
}

// Per-2-edge blend masks: sign bit set on the lanes of a broken edge's
// complex value (lanes 0,1 <- low edge, lanes 2,3 <- high edge).
const __m256d kKeepLut[4] = {
    _mm256_set_pd(0.0, 0.0, 0.0, 0.0),
    _mm256_set_pd(0.0, 0.0, -0.0, -0.0),
    _mm256_set_pd(-0.0, -0.0, 0.0, 0.0),
    _mm256_set_pd(-0.0, -0.0, -0.0, -0.0),
};

void k_shift_plane_masked(double* plane, std::size_t num_vertices, unsigned bit,
                          const std::uint64_t* mask) {
    const std::size_t stride = std::size_t{1} << bit;
    if (!mask) {
        if (bit == 0) {
            k_swap_adjacent(plane, num_vertices);
        } else {
            for (std::size_t base = 0; base < num_vertices; base += 2 * stride) {
                k_swap_ranges(plane + 2 * base, plane + 2 * (base + stride), 2 * stride);
            }
        }
        return;
    }
    if (bit == 0) {
        for (std::size_t x = 0; x < num_vertices; x += 2) {
            if (edge_broken(mask, x)) continue;
            const __m256d z = _mm256_loadu_pd(plane + 2 * x);
            _mm256_storeu_pd(plane + 2 * x, _mm256_permute4x64_pd(z, 0x4E));
        }
        return;
    }
    // bit >= 1: partner runs are at least one full vector apart, and x stays
    // even inside a run, so the two edge bits always sit in one mask word.
    for (std::size_t base = 0; base < num_vertices; base += 2 * stride) {
        for (std::size_t x = base; x < base + stride; x += 2) {
            const unsigned pat = (mask[x >> 6] >> (x & 63)) & 3u;
            double* pa = plane + 2 * x;
            double* pb = plane + 2 * (x + stride);
            if (pat == 0) {
                const __m256d va = _mm256_loadu_pd(pa);
                const __m256d vb = _mm256_loadu_pd(pb);
                _mm256_storeu_pd(pa, vb);
                _mm256_storeu_pd(pb, va);
            } else if (pat != 3) {
                const __m256d keep = kKeepLut[pat];
                const __m256d va = _mm256_loadu_pd(pa);
                const __m256d vb = _mm256_loadu_pd(pb);
                _mm256_storeu_pd(pa, _mm256_blendv_pd(vb, va, keep));
                _mm256_storeu_pd(pb, _mm256_blendv_pd(va, vb, keep));
            }
        }
    }
}

constexpr Backend kAvx2 = {
    "avx2",      k_add,           k_axpy,        k_scale,
    k_reflect,   k_sum,           k_sum_sq,      k_l1_diff,
    k_probs_accum, k_fwht,        k_swap_ranges, k_swap_adjacent,
    k_shift_plane_masked,
};

}  // namespace

const Backend* avx2_backend_table() { return &kAvx2; }

}  // namespace hyperwalk::kernels

#endif  // HYPERWALK_HAVE_AVX2
