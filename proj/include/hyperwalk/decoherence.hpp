#pragma once

#include <cstdint>
#include <vector>

#include "hyperwalk/distribution.hpp"
#include "hyperwalk/edge_mask.hpp"
#include "hyperwalk/metrics.hpp"
#include "hyperwalk/rng.hpp"

namespace hyperwalk::decoherence {

// Breaks each of the n 2^{n-1} links independently with probability p.
// Masks drawn from streams keyed by different (trial, step) are independent.
EdgeMask sample_mask(int n, double p, rng::Stream& stream);
void sample_mask_into(EdgeMask& mask, double p, rng::Stream& stream);

// The broken-link channel forgets position-localized symmetric-coin initial
// states (vertex transitivity maps them onto each other), but coin-asymmetric
// states keep a conserved non-uniform component; see the decoherence tests.
enum class InitialState { symmetric, symmetric_vertex5, coin_basis_vertex5 };

struct EnsembleParams {
    int n = 8;
    std::int64_t t_max = 1000;
    double p = 0.1;
    std::int64_t trials = 200;
    std::uint64_t seed = 1;
    InitialState init = InitialState::symmetric;
    int jobs = 1;
};

// Trial-averaged P(x,t). Trials are distributed over a fixed number of
// stripes (trial mod kStripes) and summed stripe by stripe in trial order,
// so the result is bit-identical for any thread count. The per-stripe sums
// also give leave-one-out jackknife errors.
class EnsembleAccumulator {
  public:
    static constexpr int kStripes = 8;

    EnsembleAccumulator(int n, std::int64_t t_max, std::int64_t trials);

    int dim() const { return n_; }
    std::int64_t t_max() const { return t_max_; }
    std::int64_t trials() const { return trials_; }
    int stripe_count() const { return stripe_count_; }
    std::size_t num_vertices() const { return std::size_t{1} << n_; }

    // Stripe-local running sums for steps 0..t_max; callers accumulate
    // P(x,t) of each trial in increasing trial order within a stripe.
    double* stripe_step_sums(int stripe, std::int64_t t);

    // Ensemble average over all trials at step t.
    std::vector<double> averaged_step(std::int64_t t) const;
    Distribution averaged_distribution(std::int64_t t) const;
    // Average excluding one stripe's trials (jackknife replicate).
    std::vector<double> averaged_step_excluding(std::int64_t t, int excluded_stripe) const;

    std::int64_t trials_in_stripe(int stripe) const;

  private:
    int n_;
    std::int64_t t_max_;
    std::int64_t trials_;
    int stripe_count_;
    std::size_t step_len_;
    std::vector<std::vector<double>> stripe_sums_;
};

// Monte Carlo ensemble of broken-link walks: every trial is a pure-state
// unitary evolution with a fresh mask each step.
EnsembleAccumulator run_decoherent(const EnsembleParams& params);

// TVD(Cesaro average of the ensemble-averaged walk, uniform) for T = 1..t_max.
std::vector<double> ensemble_averaged_tvd_curve(const EnsembleAccumulator& acc,
                                                const Distribution& reference);
std::vector<double> ensemble_averaged_tvd_curve_excluding(const EnsembleAccumulator& acc,
                                                          const Distribution& reference,
                                                          int excluded_stripe);

// Definition-1 mixing time of the ensemble-averaged walk to uniform.
metrics::MixingResult decoherent_mixing_time(int n, double p, double epsilon, std::int64_t trials,
                                             std::int64_t t_max, std::uint64_t seed, int jobs = 1);

}  // namespace hyperwalk::decoherence
