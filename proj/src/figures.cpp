#include "hyperwalk/figures.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "hyperwalk/decoherence.hpp"
#include "hyperwalk/kernels.hpp"
#include "hyperwalk/metrics.hpp"
#include "hyperwalk/spectral.hpp"
#include "hyperwalk/version.hpp"
#include "hyperwalk/walk.hpp"

namespace hyperwalk::cli {

namespace {

int effective_jobs(const ExperimentConfig& cfg) {
    if (cfg.jobs > 0) return cfg.jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

std::string join_numbers(const std::vector<double>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << format_number(v[i]);
    return os.str();
}

std::string join_ints(const std::vector<int>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

void echo_config(FigureTable& t, const ExperimentConfig& cfg) {
    t.metadata.emplace_back("figure", to_string(*cfg.figure));
    t.metadata.emplace_back("mode", to_string(*cfg.mode));
    t.metadata.emplace_back("n", std::to_string(cfg.n));
    t.metadata.emplace_back("p", format_number(cfg.p));
    if (cfg.t_max) t.metadata.emplace_back("t_max", std::to_string(*cfg.t_max));
    if (!cfg.epsilons.empty()) t.metadata.emplace_back("epsilon", join_numbers(cfg.epsilons));
    t.metadata.emplace_back("trials", std::to_string(cfg.trials));
    t.metadata.emplace_back("seed", std::to_string(cfg.seed));
    if (!cfg.sweep_n.empty()) t.metadata.emplace_back("sweep_n", join_ints(cfg.sweep_n));
    if (!cfg.sweep_p.empty()) t.metadata.emplace_back("sweep_p", join_numbers(cfg.sweep_p));
    t.metadata.emplace_back("version", kVersion);
    t.metadata.emplace_back("kernels", kernels::active().name);
}

FigureTable figure_pi_x(const ExperimentConfig& cfg) {
    FigureTable t;
    t.columns = {"x", "pi"};
    const Distribution pi = spectral::stationary_pi_closed(cfg.n);
    for (std::size_t x = 0; x < pi.probs.size(); ++x)
        t.rows.push_back({double(x), pi.probs[x]});
    return t;
}

FigureTable figure_hamming_profile(const ExperimentConfig& cfg) {
    FigureTable t;
    t.columns = {"hamming_weight", "p", "uniform_reference"};
    const std::vector<double> w = spectral::stationary_pi_weights(cfg.n);
    const std::vector<double> prof = spectral::hamming_profile_from_weights(cfg.n, w);
    std::vector<double> ones(cfg.n + 1, std::ldexp(1.0, -cfg.n));
    const std::vector<double> binom = spectral::hamming_profile_from_weights(cfg.n, ones);
    for (int h = 0; h <= cfg.n; ++h) t.rows.push_back({double(h), prof[h], binom[h]});
    return t;
}

FigureTable figure_tvd_coherent(const ExperimentConfig& cfg) {
    FigureTable t;
    t.columns = {"t", "tvd_to_pi", "tvd_to_uniform", "aharonov_bound"};
    const int n = cfg.n;
    const std::int64_t t_max = resolved_t_max(cfg, FigureId::tvd_coherent, n);
    const Distribution pi = spectral::stationary_pi_closed(n);
    const Distribution uni = Distribution::uniform(n);
    const std::size_t nv = std::size_t{1} << n;

    walk::WalkerState state = walk::initial_state_symmetric(n);
    const walk::CoinMatrix coin = walk::grover_coin(n);
    const EdgeMask closed;
    metrics::CesaroAverage avg(nv);
    std::vector<double> probs(nv), mean(nv);
    for (std::int64_t step = 0; step < t_max; ++step) {
        walk::position_distribution_into(state, probs.data());
        avg.add(probs.data());
        avg.mean(mean.data());
        const double d_pi = kernels::active().l1_diff(mean.data(), pi.probs.data(), nv);
        const double d_uni = kernels::active().l1_diff(mean.data(), uni.probs.data(), nv);
        const std::int64_t T = step + 1;
        t.rows.push_back({double(T), d_pi, d_uni, metrics::aharonov_bound(n, T)});
        walk::step_inplace(state, coin, closed);
    }
    return t;
}

FigureTable figure_mixing_vs_n(const ExperimentConfig& cfg) {
    FigureTable t;
    t.columns = {"n", "epsilon", "mixing_time", "t_max"};
    struct Point {
        int n;
        std::int64_t t_max;
        std::vector<std::int64_t> times;
    };
    std::vector<Point> points(cfg.sweep_n.size());
    const int jobs = effective_jobs(cfg);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < points.size(); i = next.fetch_add(1)) {
            const int n = cfg.sweep_n[i];
            const std::int64_t horizon = resolved_t_max(cfg, FigureId::mixing_vs_n, n);
            const Distribution pi = spectral::stationary_pi_closed(n);
            const std::vector<double> curve = metrics::averaged_tvd_curve(n, pi, horizon);
            Point pt{n, horizon, {}};
            for (double eps : cfg.epsilons)
                pt.times.push_back(metrics::mixing_time_from_curve(curve, eps));
            points[i] = std::move(pt);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min<int>(jobs, int(points.size())) - 1; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    for (const Point& pt : points)
        for (std::size_t e = 0; e < cfg.epsilons.size(); ++e)
            t.rows.push_back({double(pt.n), cfg.epsilons[e], double(pt.times[e]), double(pt.t_max)});
    return t;
}

// Delete-one-stripe jackknife standard error of a statistic over the stripes.
double jackknife_se(const std::vector<double>& replicates) {
    const std::size_t s = replicates.size();
    if (s < 2) return 0.0;
    double mean = 0.0;
    for (double r : replicates) mean += r;
    mean /= double(s);
    double ss = 0.0;
    for (double r : replicates) ss += (r - mean) * (r - mean);
    return std::sqrt(double(s - 1) / double(s) * ss);
}

FigureTable figure_tvd_decoherent(const ExperimentConfig& cfg) {
    FigureTable t;
    t.columns = {"p", "t", "tvd_to_uniform", "tvd_to_uniform_se", "tvd_to_pi"};
    const int n = cfg.n;
    const std::int64_t t_max = resolved_t_max(cfg, FigureId::tvd_decoherent, n);
    const Distribution uni = Distribution::uniform(n);
    const Distribution pi = spectral::stationary_pi_closed(n);

    for (double p : cfg.sweep_p) {
        decoherence::EnsembleParams params;
        params.n = n;
        params.p = p;
        params.t_max = t_max;
        params.trials = p == 0.0 ? 1 : cfg.trials;  // the coherent walk has no trial noise
        params.seed = cfg.seed;
        params.jobs = effective_jobs(cfg);
        const auto acc = decoherence::run_decoherent(params);

        const std::vector<double> curve_uni = decoherence::ensemble_averaged_tvd_curve(acc, uni);
        const std::vector<double> curve_pi = decoherence::ensemble_averaged_tvd_curve(acc, pi);
        std::vector<std::vector<double>> loo;
        if (acc.stripe_count() > 1) {
            for (int s = 0; s < acc.stripe_count(); ++s)
                loo.push_back(decoherence::ensemble_averaged_tvd_curve_excluding(acc, uni, s));
        }
        for (std::int64_t step = 0; step < t_max; ++step) {
            double se = 0.0;
            if (!loo.empty()) {
                std::vector<double> reps;
                reps.reserve(loo.size());
                for (const auto& c : loo) reps.push_back(c[std::size_t(step)]);
                se = jackknife_se(reps);
            }
            t.rows.push_back({p, double(step + 1), curve_uni[std::size_t(step)], se,
                              curve_pi[std::size_t(step)]});
        }
    }
    return t;
}

FigureTable figure_mixing_vs_p(const ExperimentConfig& cfg) {
    FigureTable t;
    t.columns = {"p", "epsilon", "mixing_time", "mixing_time_se", "t_max"};
    const int n = cfg.n;
    const double eps = cfg.epsilons.front();
    const std::int64_t t_max = resolved_t_max(cfg, FigureId::mixing_vs_p, n);
    const Distribution uni = Distribution::uniform(n);

    for (double p : cfg.sweep_p) {
        decoherence::EnsembleParams params;
        params.n = n;
        params.p = p;
        params.t_max = t_max;
        params.trials = cfg.trials;
        params.seed = cfg.seed;
        params.jobs = effective_jobs(cfg);
        const auto acc = decoherence::run_decoherent(params);
        const std::vector<double> curve = decoherence::ensemble_averaged_tvd_curve(acc, uni);
        const std::int64_t time = metrics::mixing_time_from_curve(curve, eps);

        std::vector<double> reps;
        if (acc.stripe_count() > 1) {
            for (int s = 0; s < acc.stripe_count(); ++s) {
                const auto c = decoherence::ensemble_averaged_tvd_curve_excluding(acc, uni, s);
                reps.push_back(double(metrics::mixing_time_from_curve(c, eps)));
            }
        }
        t.rows.push_back({p, eps, double(time), jackknife_se(reps), double(t_max)});
    }
    return t;
}

FigureTable figure_mixing_vs_n_deco(const ExperimentConfig& cfg) {
    FigureTable t;
    t.columns = {"n", "epsilon", "mixing_time_decoherent", "mixing_time_coherent", "t_max"};
    const double eps = cfg.epsilons.front();
    for (int n : cfg.sweep_n) {
        const std::int64_t t_max = resolved_t_max(cfg, FigureId::mixing_vs_n_deco, n);
        const auto deco = decoherence::decoherent_mixing_time(n, cfg.p, eps, cfg.trials, t_max,
                                                              cfg.seed, effective_jobs(cfg));
        const auto coh = metrics::average_mixing_time(n, eps, spectral::stationary_pi_closed(n),
                                                      metrics::default_t_max(n));
        t.rows.push_back({double(n), eps, double(deco.time), double(coh.time), double(t_max)});
    }
    return t;
}

}  // namespace

FigureTable run_figure(const ExperimentConfig& cfg) {
    if (!cfg.figure || !cfg.mode) throw std::logic_error("run_figure needs a finalized config");
    const auto start = std::chrono::steady_clock::now();
    FigureTable t;
    switch (*cfg.figure) {
        case FigureId::pi_x: t = figure_pi_x(cfg); break;
        case FigureId::hamming_profile: t = figure_hamming_profile(cfg); break;
        case FigureId::tvd_coherent: t = figure_tvd_coherent(cfg); break;
        case FigureId::mixing_vs_n: t = figure_mixing_vs_n(cfg); break;
        case FigureId::tvd_decoherent: t = figure_tvd_decoherent(cfg); break;
        case FigureId::mixing_vs_p: t = figure_mixing_vs_p(cfg); break;
        case FigureId::mixing_vs_n_deco: t = figure_mixing_vs_n_deco(cfg); break;
    }
    FigureTable with_meta;
    with_meta.columns = std::move(t.columns);
    with_meta.rows = std::move(t.rows);
    echo_config(with_meta, cfg);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", wall);
    with_meta.metadata.emplace_back("wall_time_s", buf);
    return with_meta;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string default_output_path(const ExperimentConfig& cfg) {
    return std::string(to_string(*cfg.figure)) + "." + to_string(cfg.format);
}

namespace {

void write_csv(const FigureTable& t, std::ostream& os) {
    os << "# hyperwalk " << kVersion << "\n";
    for (const auto& [k, v] : t.metadata) os << "# " << k << " = " << v << "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_number(row[c]);
        os << "\n";
    }
}

void write_json(const FigureTable& t, std::ostream& os) {
    nlohmann::json j;
    for (const auto& [k, v] : t.metadata) j["metadata"][k] = v;
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    os << j.dump(1, '\t') << "\n";
}

}  // namespace

void write_output(const FigureTable& table, const std::string& path, OutputFormat format) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    try {
        {
            std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
            if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
            if (format == OutputFormat::csv) write_csv(table, os);
            else write_json(table, os);
            os.flush();
            if (!os) throw std::runtime_error("write to " + tmp.string() + " failed");
        }
        fs::rename(tmp, target);
    } catch (...) {
        std::error_code ec;
        fs::remove(tmp, ec);
        throw;
    }
}

}  // namespace hyperwalk::cli
