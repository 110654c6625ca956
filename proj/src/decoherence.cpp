#include "hyperwalk/decoherence.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>
#include <thread>

#include "hyperwalk/kernels.hpp"
#include "hyperwalk/walk.hpp"

namespace hyperwalk::decoherence {

void sample_mask_into(EdgeMask& mask, double p, rng::Stream& stream) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("break probability p must lie in [0, 1]");
    mask.clear();
    if (p <= 0.0) return;
    const int n = mask.dim();
    const std::size_t half = std::size_t{1} << (n - 1);
    if (p >= 1.0) {
        for (unsigned j = 0; j < unsigned(n); ++j) {
            for (std::size_t hi = 0; hi < half; ++hi) {
                const std::size_t low_bits = hi & ((std::size_t{1} << j) - 1);
                mask.set_broken(((hi >> j) << (j + 1)) | low_bits, j);
            }
        }
        return;
    }
    const std::uint64_t thr = rng::Stream::threshold_for(p);
    for (unsigned j = 0; j < unsigned(n); ++j) {
        for (std::size_t hi = 0; hi < half; ++hi) {
            if (stream.bernoulli(thr)) {
                const std::size_t low_bits = hi & ((std::size_t{1} << j) - 1);
                mask.set_broken(((hi >> j) << (j + 1)) | low_bits, j);
            }
        }
    }
}

EdgeMask sample_mask(int n, double p, rng::Stream& stream) {
    if (n < 1) throw std::invalid_argument("mask dimension must be positive");
    EdgeMask mask(n);
    sample_mask_into(mask, p, stream);
    return mask;
}

EnsembleAccumulator::EnsembleAccumulator(int n, std::int64_t t_max, std::int64_t trials)
    : n_(n),
      t_max_(t_max),
      trials_(trials),
      stripe_count_(int(std::min<std::int64_t>(trials, kStripes))),
      step_len_(std::size_t{1} << n) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    stripe_sums_.resize(std::size_t(stripe_count_));
    for (auto& s : stripe_sums_) s.assign(std::size_t(t_max_ + 1) * step_len_, 0.0);
}

double* EnsembleAccumulator::stripe_step_sums(int stripe, std::int64_t t) {
    return stripe_sums_[std::size_t(stripe)].data() + std::size_t(t) * step_len_;
}

std::int64_t EnsembleAccumulator::trials_in_stripe(int stripe) const {
    return (trials_ - stripe + stripe_count_ - 1) / stripe_count_;
}

std::vector<double> EnsembleAccumulator::averaged_step(std::int64_t t) const {
    std::vector<double> out(step_len_, 0.0);
    const auto& k = kernels::active();
    for (const auto& s : stripe_sums_) k.add(out.data(), s.data() + std::size_t(t) * step_len_, step_len_);
    k.scale(out.data(), 1.0 / double(trials_), step_len_);
    return out;
}

std::vector<double> EnsembleAccumulator::averaged_step_excluding(std::int64_t t,
                                                                 int excluded_stripe) const {
    std::vector<double> out(step_len_, 0.0);
    const auto& k = kernels::active();
    for (int s = 0; s < stripe_count_; ++s) {
        if (s == excluded_stripe) continue;
        k.add(out.data(), stripe_sums_[std::size_t(s)].data() + std::size_t(t) * step_len_, step_len_);
    }
    const std::int64_t kept = trials_ - trials_in_stripe(excluded_stripe);
    if (kept < 1) throw std::logic_error("jackknife needs trials in at least two stripes");
    k.scale(out.data(), 1.0 / double(kept), step_len_);
    return out;
}

Distribution EnsembleAccumulator::averaged_distribution(std::int64_t t) const {
    Distribution d;
    d.n = n_;
    d.probs = averaged_step(t);
    return d;
}

namespace {

walk::WalkerState make_initial(int n, InitialState init) {
    switch (init) {
        case InitialState::symmetric:
            return walk::initial_state_symmetric(n);
        case InitialState::symmetric_vertex5:
            return walk::initial_state_symmetric(n, 5 % (std::size_t{1} << n));
        case InitialState::coin_basis_vertex5:
            return walk::initial_state_basis(n, 0, 5 % (std::size_t{1} << n));
    }
    throw std::logic_error("unknown initial state");
}

void run_stripe(const EnsembleParams& params, EnsembleAccumulator& acc, int stripe) {
    const int n = params.n;
    const std::size_t nv = std::size_t{1} << n;
    const walk::CoinMatrix coin = walk::grover_coin(n);
    EdgeMask mask(n);
    std::vector<double> probs(nv);

    for (std::int64_t trial = stripe; trial < params.trials; trial += acc.stripe_count()) {
        walk::WalkerState state = make_initial(n, params.init);
        walk::position_distribution_into(state, probs.data());
        kernels::active().add(acc.stripe_step_sums(stripe, 0), probs.data(), nv);
        for (std::int64_t t = 1; t <= params.t_max; ++t) {
            rng::Stream stream =
                rng::Stream::keyed(params.seed, std::uint64_t(trial), std::uint64_t(t));
            sample_mask_into(mask, params.p, stream);
            walk::step_inplace(state, coin, mask);
            walk::position_distribution_into(state, probs.data());
            kernels::active().add(acc.stripe_step_sums(stripe, t), probs.data(), nv);
        }
    }
}

}  // namespace

EnsembleAccumulator run_decoherent(const EnsembleParams& params) {
    if (params.p < 0.0 || params.p > 1.0) throw std::invalid_argument("break probability p must lie in [0, 1]");
    if (params.t_max < 1) throw std::invalid_argument("t_max must be positive");
    EnsembleAccumulator acc(params.n, params.t_max, params.trials);

    const int workers = std::max(1, std::min({params.jobs, acc.stripe_count(),
                                              int(std::thread::hardware_concurrency())}));
    if (workers <= 1) {
        for (int s = 0; s < acc.stripe_count(); ++s) run_stripe(params, acc, s);
        return acc;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next_stripe{0};
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int s = next_stripe.fetch_add(1); s < acc.stripe_count();
                 s = next_stripe.fetch_add(1)) {
                run_stripe(params, acc, s);
            }
        });
    }
    for (auto& th : pool) th.join();
    return acc;
}

std::vector<double> ensemble_averaged_tvd_curve_excluding(const EnsembleAccumulator& acc,
                                                          const Distribution& reference,
                                                          int excluded_stripe) {
    const std::size_t nv = acc.num_vertices();
    if (reference.probs.size() != nv) throw std::invalid_argument("reference length mismatch");
    metrics::CesaroAverage avg(nv);
    std::vector<double> mean(nv), curve;
    curve.reserve(std::size_t(acc.t_max()));
    for (std::int64_t t = 0; t < acc.t_max(); ++t) {
        const std::vector<double> step = excluded_stripe < 0
                                             ? acc.averaged_step(t)
                                             : acc.averaged_step_excluding(t, excluded_stripe);
        avg.add(step.data());
        avg.mean(mean.data());
        curve.push_back(kernels::active().l1_diff(mean.data(), reference.probs.data(), nv));
    }
    return curve;
}

std::vector<double> ensemble_averaged_tvd_curve(const EnsembleAccumulator& acc,
                                                const Distribution& reference) {
    return ensemble_averaged_tvd_curve_excluding(acc, reference, -1);
}

metrics::MixingResult decoherent_mixing_time(int n, double p, double epsilon, std::int64_t trials,
                                             std::int64_t t_max, std::uint64_t seed, int jobs) {
    if (!(epsilon > 0.0) || epsilon > 2.0) throw std::invalid_argument("epsilon must lie in (0, 2]");
    EnsembleParams params;
    params.n = n;
    params.p = p;
    params.trials = trials;
    params.t_max = t_max;
    params.seed = seed;
    params.jobs = jobs;
    const EnsembleAccumulator acc = run_decoherent(params);

    metrics::MixingResult r;
    r.epsilon = epsilon;
    r.t_max = t_max;
    r.tvd_curve = ensemble_averaged_tvd_curve(acc, Distribution::uniform(n));
    r.time = metrics::mixing_time_from_curve(r.tvd_curve, epsilon);
    return r;
}

}  // namespace hyperwalk::decoherence
