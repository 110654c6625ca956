#pragma once

#include <cstdint>
#include <vector>

#include "hyperwalk/distribution.hpp"

namespace hyperwalk::metrics {

// Total variation distance sum_x |a(x) - b(x)|, in [0, 2].
double tvd(const Distribution& a, const Distribution& b);
double tvd(const std::vector<double>& a, const std::vector<double>& b);

// Cesaro mean of the first T entries of a distribution history.
Distribution time_averaged(const std::vector<Distribution>& history, std::size_t T);

// Incremental Cesaro mean; equals the batch mean of everything added.
class CesaroAverage {
  public:
    explicit CesaroAverage(std::size_t len) : sums_(len, 0.0) {}
    void add(const double* probs);
    std::size_t count() const { return count_; }
    // Mean so far, written into out (length as constructed).
    void mean(double* out) const;
    std::vector<double> mean() const;

  private:
    std::vector<double> sums_;
    std::size_t count_ = 0;
};

struct MixingResult {
    double epsilon = 0.0;
    std::int64_t time = -1;  // -1: no mixing time within the horizon
    std::int64_t t_max = 0;  // certification horizon for the forall-t quantifier
    std::vector<double> tvd_curve;

    bool found() const { return time >= 0; }
};

inline std::int64_t default_t_max(int n) { return 200 * std::int64_t(n); }

// curve[i] = TVD of the averaged distribution with T = i+1 against the
// reference. The forall-t condition is resolved by a backward scan: the
// result is one past the last exceedance, 0 when nothing exceeds, and -1
// when the final entry still exceeds epsilon.
std::int64_t mixing_time_from_curve(const std::vector<double>& curve, double epsilon);

// TVD(Pbar_T, reference) for T = 1..t_max of the coherent walk started from
// the symmetric state.
std::vector<double> averaged_tvd_curve(int n, const Distribution& reference, std::int64_t t_max);

// Definition-1 mixing time of the coherent walk.
MixingResult average_mixing_time(int n, double epsilon, const Distribution& reference,
                                 std::int64_t t_max);

enum class ReferenceKind { stationary, uniform };

// Definition-2 mixing time against the parity-adjusted reference: at step t
// the reference is conditioned on vertices with |x| = t (mod 2) and
// renormalized. curve[t] = TVD(P_t, reference_t) for t = 0..t_max.
MixingResult instantaneous_mixing_time(int n, double epsilon, ReferenceKind reference,
                                       std::int64_t t_max);

// (pi sqrt(n) / 2T) (1 + ln(n 2^{n-1})): TVD upper bound for the averaged
// distribution, using the spectral gap 2/sqrt(n).
double aharonov_bound(int n, std::int64_t T);

// Reference distribution conditioned on a Hamming parity class (0 or 1).
Distribution restrict_to_parity(const Distribution& ref, int parity);

// Ordinary least squares y = slope*x + intercept with coefficient of
// determination; used for the scaling fits.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hyperwalk::metrics
