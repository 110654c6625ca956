#include "hyperwalk/spectral.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hyperwalk/kernels.hpp"

namespace hyperwalk::spectral {

namespace {

// Binomial coefficients as doubles, zero outside 0 <= b <= a. Values below
// 2^53 are rounded to their exact integer.
class BinomialTable {
  public:
    explicit BinomialTable(int max_a) : max_a_(max_a), v_((max_a + 1) * (max_a + 2) / 2) {
        for (int a = 0; a <= max_a; ++a) {
            for (int b = 0; b <= a; ++b) {
                double x = std::exp(std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0));
                if (x < 9.0e15) x = std::nearbyint(x);
                v_[idx(a, b)] = x;
            }
        }
    }
    double operator()(int a, int b) const {
        if (b < 0 || a < 0 || b > a) return 0.0;
        return v_[idx(a, b)];
    }

  private:
    static std::size_t idx(int a, int b) { return std::size_t(a) * (a + 1) / 2 + b; }
    int max_a_;
    std::vector<double> v_;
};

void check_closed_dim(int n, int max_n) {
    if (n < 2 || n > max_n)
        throw std::invalid_argument("dimension " + std::to_string(n) + " outside supported range [2, " +
                                    std::to_string(max_n) + "]");
}

}  // namespace

double omega(int n, int hk) {
    if (n < 2) throw std::invalid_argument("dimension must be at least 2");
    if (hk < 0 || hk > n) throw std::invalid_argument("Hamming weight out of [0, n]");
    return std::acos(1.0 - 2.0 * double(hk) / double(n));
}

std::complex<double> alpha(int n, std::uint64_t k, int j) {
    if (n < 2 || n > 63) throw std::invalid_argument("dimension out of range");
    if (j < 0 || j >= n) throw std::invalid_argument("coin index out of range");
    const int h = std::popcount(k);
    if (h < 1 || h > n - 1)
        throw std::domain_error("alpha undefined for degenerate weight |k| = " + std::to_string(h));
    const double kj = (k >> j) & 1u ? 1.0 : 0.0;
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    return {inv_sqrt2 * kj / std::sqrt(double(h)), -inv_sqrt2 * (1.0 - kj) / std::sqrt(double(n - h))};
}

std::vector<std::complex<double>> walsh_hadamard(const std::vector<std::complex<double>>& values) {
    const std::size_t len = values.size();
    if (len == 0 || (len & (len - 1)) != 0)
        throw std::invalid_argument("walsh_hadamard needs a power-of-two length, got " + std::to_string(len));
    std::vector<std::complex<double>> out = values;
    double* d = reinterpret_cast<double*>(out.data());
    const auto& k = kernels::active();
    k.fwht(d, 2 * len, 2);
    k.scale(d, 1.0 / std::sqrt(double(len)), 2 * len);
    return out;
}

Distribution stationary_pi_spectral(int n) {
    check_closed_dim(n, 10);
    const std::size_t nv = std::size_t{1} << n;

    // Bucket the same-weight label pairs by their XOR; the remaining
    // character sum over x is a Walsh-Hadamard transform.
    std::vector<std::vector<std::uint32_t>> by_weight(n + 1);
    for (std::uint32_t k = 0; k < nv; ++k) by_weight[std::popcount(k)].push_back(k);

    std::vector<double> xor_coeff(nv, 0.0);
    for (int h = 1; h <= n - 1; ++h) {
        const double denom = 2.0 * h * (n - h);
        for (std::uint32_t ka : by_weight[h]) {
            for (std::uint32_t kb : by_weight[h]) {
                const int dot = std::popcount(ka & kb);
                // <nu_n(ka)|nu_n(kb)> for equal weights h
                const double overlap = (double(n) * dot + double(h) * (n - 2 * h)) / denom;
                xor_coeff[ka ^ kb] += overlap;
            }
        }
    }

    kernels::active().fwht(xor_coeff.data(), nv, 1);

    Distribution pi;
    pi.n = n;
    pi.probs.resize(nv);
    const double norm = std::ldexp(1.0, -2 * n);  // 1 / 2^{2n}
    for (std::size_t x = 0; x < nv; ++x) pi.probs[x] = norm * (2.0 + xor_coeff[x]);
    pi.clamp_and_validate();
    return pi;
}

std::vector<double> stationary_pi_weights_direct(int n) {
    check_closed_dim(n, 40);
    const BinomialTable bin(n);
    const double norm = std::ldexp(1.0, -2 * n);
    std::vector<double> pi_w(n + 1);

    for (int w = 0; w <= n; ++w) {
        long double acc = 0.0L;
        for (int i = 1; i <= n - 1; ++i) {
            const double denom = 2.0 * i * (n - i);
            const double base_i = double(i) * (n - 2 * i);
            for (int m = 0; m <= w; ++m) {
                const double c_wm = bin(w, m);
                const double c_nw_im = bin(n - w, i - m);
                if (c_wm == 0.0 || c_nw_im == 0.0) continue;
                for (int p = 0; p <= m; ++p) {
                    const double c_mp = bin(m, p);
                    if (c_mp == 0.0) continue;
                    for (int l = 0; l <= w; ++l) {
                        const double c_wml = bin(w - m, l - m + p);
                        if (c_wml == 0.0) continue;
                        const double front =
                            (l & 1 ? -1.0 : 1.0) * c_wm * c_nw_im * c_mp * c_wml / denom;
                        // nonzero j range of the two remaining binomials
                        const int arg0 = i - l + m - p;  // second binomial takes arg0 - j
                        int j_lo = std::max(0, std::max(p, arg0 - (n - w - i + m)));
                        int j_hi = std::min(i, std::min(p + i - m, arg0));
                        for (int j = j_lo; j <= j_hi; ++j) {
                            acc += (long double)(front * bin(i - m, j - p) *
                                                 bin(n - w - i + m, arg0 - j) *
                                                 (base_i + double(n) * j));
                        }
                    }
                }
            }
        }
        pi_w[w] = double(norm * (2.0L + acc));
    }
    return pi_w;
}

std::vector<double> stationary_pi_weights_factored(int n) {
    check_closed_dim(n, 64);
    // exact integer binomials; C(64,32) still fits in 64 bits
    std::vector<std::vector<std::uint64_t>> c(n + 1);
    for (int a = 0; a <= n; ++a) {
        c[a].assign(a + 1, 1);
        for (int b = 1; b < a; ++b) c[a][b] = c[a - 1][b - 1] + c[a - 1][b];
    }
    const auto cb = [&](int a, int b) -> __int128 {
        if (a < 0 || b < 0 || b > a) return 0;
        return __int128(c[a][std::size_t(b)]);
    };

    std::vector<double> pi_w(n + 1);
    for (int w = 0; w <= n; ++w) {
        long double total = 0.0L;
        for (int h = 1; h <= n - 1; ++h) {
            __int128 p0 = 0, p1 = 0, q1 = 0, q2 = 0;
            for (int a = 0; a <= h; ++a) {
                const __int128 base = cb(w, a) * cb(n - w, h - a);
                const __int128 sgn = (a & 1) ? -1 : 1;
                p0 += sgn * base;
                p1 += sgn * __int128(a) * base;
                q1 += sgn * cb(w - 1, a - 1) * cb(n - w, h - a);
                q2 += sgn * cb(w, a) * cb(n - w - 1, h - a - 1);
            }
            const long double f0 = (long double)p0;
            const long double f1 = (long double)p1;
            total += ((long double)n * (f1 * (long double)q1 +
                                        ((long double)h * f0 - f1) * (long double)q2) +
                      (long double)(h * (n - 2 * h)) * f0 * f0) /
                     (long double)(2 * h * (n - h));
        }
        pi_w[w] = double(std::ldexp(1.0L, -2 * n) * (2.0L + total));
    }
    return pi_w;
}

std::vector<double> stationary_pi_weights(int n) {
    check_closed_dim(n, 64);
    // the literal sum loses ~all precision above n = 40
    return n <= 40 ? stationary_pi_weights_direct(n) : stationary_pi_weights_factored(n);
}

Distribution stationary_pi_closed(int n) {
    check_closed_dim(n, 24);
    const std::vector<double> pi_w = stationary_pi_weights(n);
    Distribution pi;
    pi.n = n;
    pi.probs.resize(std::size_t{1} << n);
    for (std::size_t x = 0; x < pi.probs.size(); ++x) pi.probs[x] = pi_w[std::popcount(x)];
    pi.clamp_and_validate();
    return pi;
}

double pi_at_origin(int n) {
    if (n < 2) throw std::invalid_argument("dimension must be at least 2");
    const double gamma_ratio = std::exp(std::lgamma(n + 0.5) - std::lgamma(double(n)));
    return std::ldexp(1.0, -2 * n) + gamma_ratio / (2.0 * std::sqrt(std::numbers::pi) * n);
}

std::vector<double> hamming_profile_from_weights(int n, const std::vector<double>& weights) {
    if (int(weights.size()) != n + 1) throw std::invalid_argument("need n+1 per-weight values");
    const BinomialTable bin(n);
    std::vector<double> p(n + 1);
    for (int h = 0; h <= n; ++h) p[h] = bin(n, h) * weights[h];
    return p;
}

std::vector<double> hamming_profile(const Distribution& pi) {
    const int n = pi.n;
    const std::size_t nv = std::size_t{1} << n;
    if (pi.probs.size() != nv) throw std::invalid_argument("distribution size mismatch");
    std::vector<double> rep(n + 1, -1.0);
    for (std::size_t x = 0; x < nv; ++x) {
        const int h = std::popcount(x);
        if (rep[h] < 0.0) {
            rep[h] = pi.probs[x];
        } else if (std::fabs(rep[h] - pi.probs[x]) > 1e-10) {
            throw std::invalid_argument("distribution is not a function of Hamming weight");
        }
    }
    return hamming_profile_from_weights(n, rep);
}

}  // namespace hyperwalk::spectral
