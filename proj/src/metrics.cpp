#include "hyperwalk/metrics.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hyperwalk/kernels.hpp"
#include "hyperwalk/spectral.hpp"
#include "hyperwalk/walk.hpp"

namespace hyperwalk::metrics {

double tvd(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("tvd: length mismatch");
    return kernels::active().l1_diff(a.data(), b.data(), a.size());
}

double tvd(const Distribution& a, const Distribution& b) { return tvd(a.probs, b.probs); }

Distribution time_averaged(const std::vector<Distribution>& history, std::size_t T) {
    if (T < 1 || T > history.size()) throw std::invalid_argument("time_averaged: T out of range");
    Distribution out;
    out.n = history[0].n;
    out.probs.assign(history[0].probs.size(), 0.0);
    const auto& k = kernels::active();
    for (std::size_t t = 0; t < T; ++t) k.add(out.probs.data(), history[t].probs.data(), out.probs.size());
    k.scale(out.probs.data(), 1.0 / double(T), out.probs.size());
    return out;
}

void CesaroAverage::add(const double* probs) {
    kernels::active().add(sums_.data(), probs, sums_.size());
    ++count_;
}

void CesaroAverage::mean(double* out) const {
    if (count_ == 0) throw std::logic_error("CesaroAverage::mean before any add");
    const double inv = 1.0 / double(count_);
    for (std::size_t i = 0; i < sums_.size(); ++i) out[i] = sums_[i] * inv;
}

std::vector<double> CesaroAverage::mean() const {
    std::vector<double> out(sums_.size());
    mean(out.data());
    return out;
}

std::int64_t mixing_time_from_curve(const std::vector<double>& curve, double epsilon) {
    std::int64_t last_exceedance = -1;
    for (std::int64_t i = std::int64_t(curve.size()) - 1; i >= 0; --i) {
        if (curve[std::size_t(i)] > epsilon) {
            last_exceedance = i;
            break;
        }
    }
    if (last_exceedance < 0) return 0;
    if (last_exceedance == std::int64_t(curve.size()) - 1) return -1;
    return last_exceedance + 2;  // curve index i holds T = i+1
}

namespace {

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 2.0)
        throw std::invalid_argument("epsilon must lie in (0, 2]");
}

}  // namespace

std::vector<double> averaged_tvd_curve(int n, const Distribution& reference, std::int64_t t_max) {
    if (t_max < 1) throw std::invalid_argument("t_max must be positive");
    const std::size_t nv = std::size_t{1} << n;
    if (reference.probs.size() != nv) throw std::invalid_argument("reference length mismatch");

    walk::WalkerState state = walk::initial_state_symmetric(n);
    const walk::CoinMatrix coin = walk::grover_coin(n);
    const EdgeMask closed;

    CesaroAverage avg(nv);
    std::vector<double> probs(nv), mean(nv), curve;
    curve.reserve(std::size_t(t_max));
    for (std::int64_t t = 0; t < t_max; ++t) {
        walk::position_distribution_into(state, probs.data());
        avg.add(probs.data());
        avg.mean(mean.data());
        curve.push_back(kernels::active().l1_diff(mean.data(), reference.probs.data(), nv));
        walk::step_inplace(state, coin, closed);
    }
    return curve;
}

MixingResult average_mixing_time(int n, double epsilon, const Distribution& reference,
                                 std::int64_t t_max) {
    check_epsilon(epsilon);
    MixingResult r;
    r.epsilon = epsilon;
    r.t_max = t_max;
    r.tvd_curve = averaged_tvd_curve(n, reference, t_max);
    r.time = mixing_time_from_curve(r.tvd_curve, epsilon);
    return r;
}

Distribution restrict_to_parity(const Distribution& ref, int parity) {
    Distribution out;
    out.n = ref.n;
    out.probs.assign(ref.probs.size(), 0.0);
    double mass = 0.0;
    for (std::size_t x = 0; x < ref.probs.size(); ++x) {
        if ((std::popcount(x) & 1) == parity) {
            out.probs[x] = ref.probs[x];
            mass += ref.probs[x];
        }
    }
    if (mass <= 0.0) throw std::invalid_argument("reference has no mass on the requested parity class");
    kernels::active().scale(out.probs.data(), 1.0 / mass, out.probs.size());
    return out;
}

MixingResult instantaneous_mixing_time(int n, double epsilon, ReferenceKind reference,
                                       std::int64_t t_max) {
    check_epsilon(epsilon);
    const std::size_t nv = std::size_t{1} << n;
    const Distribution ref = reference == ReferenceKind::uniform ? Distribution::uniform(n)
                                                                 : spectral::stationary_pi_closed(n);
    const Distribution ref_even = restrict_to_parity(ref, 0);
    const Distribution ref_odd = restrict_to_parity(ref, 1);

    walk::WalkerState state = walk::initial_state_symmetric(n);
    const walk::CoinMatrix coin = walk::grover_coin(n);
    const EdgeMask closed;

    MixingResult r;
    r.epsilon = epsilon;
    r.t_max = t_max;
    r.tvd_curve.reserve(std::size_t(t_max) + 1);
    std::vector<double> probs(nv);
    for (std::int64_t t = 0; t <= t_max; ++t) {
        walk::position_distribution_into(state, probs.data());
        const Distribution& target = (t & 1) ? ref_odd : ref_even;
        const double d = kernels::active().l1_diff(probs.data(), target.probs.data(), nv);
        r.tvd_curve.push_back(d);
        if (r.time < 0 && d <= epsilon) r.time = t;
        walk::step_inplace(state, coin, closed);
    }
    return r;
}

double aharonov_bound(int n, std::int64_t T) {
    if (T < 1) throw std::invalid_argument("T must be positive");
    const double log_pairs = std::log(double(n)) + double(n - 1) * std::numbers::ln2;
    return std::numbers::pi * std::sqrt(double(n)) / (2.0 * double(T)) * (1.0 + log_pairs);
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("linear_fit needs >= 2 points");
    const double m = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LinearFit f;
    const double denom = m * sxx - sx * sx;
    f.slope = (m * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / m;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / m;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double fit = f.slope * x[i] + f.intercept;
        ss_res += (y[i] - fit) * (y[i] - fit);
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
    }
    f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

}  // namespace hyperwalk::metrics
