// Command-line front end: runs coherent/decoherent experiments and sweeps,
// writing one CSV (or JSON) per figure.
//
// Exit codes: 0 success, 2 invalid configuration, 3 resource limit,
// 4 internal error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hyperwalk/config.hpp"
#include "hyperwalk/figures.hpp"
#include "hyperwalk/version.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;
constexpr int kExitInternal = 4;

int report_and_exit_code(const hyperwalk::cli::ValidationReport& report) {
    std::cerr << report.joined();
    return report.has_config_error() ? kExitConfig : kExitResource;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace hyperwalk::cli;

    CLI::App app{"Quantum-walk mixing experiments on the n-dimensional hypercube"};
    app.set_version_flag("--version", std::string("hyperwalk ") + hyperwalk::kVersion);

    std::string config_path, mode_str, figure_str, out_path, format_str;
    int n = 0, jobs = -1;
    std::int64_t t_max = 0, trials = 0;
    double p = -1.0;
    std::vector<double> epsilons;
    std::string seed_str;
    std::vector<int> sweep_n;
    std::vector<double> sweep_p;

    app.add_option("--config", config_path, "Key =  value config file; flags override it");
    app.add_option("--mode", mode_str, "coherent|decoherent|closed_form|sweep");
    app.add_option("--figure", figure_str,
                   "pi_x|hamming_profile|tvd_coherent|mixing_vs_n|tvd_decoherent|mixing_vs_p|"
                   "mixing_vs_n_deco");
    app.add_option("--n", n, "hypercube dimension");
    app.add_option("--p", p, "link break probability");
    app.add_option("--t-max", t_max, "number of walk steps");
    app.add_option("--epsilon", epsilons, "mixing threshold(s), repeatable")->delimiter(',');
    app.add_option("--trials", trials, "Monte Carlo trials per point");
    app.add_option("--seed", seed_str, "64-bit RNG seed");
    app.add_option("--sweep-n", sweep_n, "dimensions for n sweeps, repeatable")->delimiter(',');
    app.add_option("--sweep-p", sweep_p, "break probabilities for p sweeps, repeatable")->delimiter(',');
    app.add_option("--out", out_path, "output path (default <figure>.<format>)");
    app.add_option("--format", format_str, "csv|json");
    app.add_option("--jobs", jobs, "worker threads (0 = all cores)");

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg;
        ValidationReport report;

        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "config error: cannot read " << config_path << "\n";
                return kExitConfig;
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            report = apply_key_values(cfg, buf.str());
        }

        // command-line overrides win over the file
        std::ostringstream overrides;
        if (app.count("--mode")) overrides << "mode = " << mode_str << "\n";
        if (app.count("--figure")) overrides << "figure = " << figure_str << "\n";
        if (app.count("--n")) overrides << "n = " << n << "\n";
        if (app.count("--p")) overrides << "p = " << p << "\n";
        if (app.count("--t-max")) overrides << "t_max = " << t_max << "\n";
        if (app.count("--trials")) overrides << "trials = " << trials << "\n";
        if (app.count("--seed")) overrides << "seed = " << seed_str << "\n";
        if (app.count("--format")) overrides << "format = " << format_str << "\n";
        if (app.count("--jobs")) overrides << "jobs = " << jobs << "\n";
        if (app.count("--out")) overrides << "out = " << out_path << "\n";
        if (!epsilons.empty()) {
            overrides << "epsilon = ";
            for (std::size_t i = 0; i < epsilons.size(); ++i)
                overrides << (i ? "," : "") << epsilons[i];
            overrides << "\n";
        }
        if (!sweep_n.empty()) {
            overrides << "sweep_n = ";
            for (std::size_t i = 0; i < sweep_n.size(); ++i) overrides << (i ? "," : "") << sweep_n[i];
            overrides << "\n";
        }
        if (!sweep_p.empty()) {
            overrides << "sweep_p = ";
            for (std::size_t i = 0; i < sweep_p.size(); ++i) overrides << (i ? "," : "") << sweep_p[i];
            overrides << "\n";
        }
        {
            ValidationReport more = apply_key_values(cfg, overrides.str());
            report.issues.insert(report.issues.end(), more.issues.begin(), more.issues.end());
        }
        {
            ValidationReport more = finalize_and_validate(cfg);
            report.issues.insert(report.issues.end(), more.issues.begin(), more.issues.end());
        }
        if (!report.ok()) return report_and_exit_code(report);

        if (cfg.out.empty()) cfg.out = default_output_path(cfg);
        const FigureTable table = run_figure(cfg);
        write_output(table, cfg.out, cfg.format);
        std::cout << "wrote " << cfg.out << " (" << table.rows.size() << " rows)\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
