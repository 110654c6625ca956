#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyperwalk::cli {

enum class Mode { coherent, decoherent, closed_form, sweep };

enum class FigureId {
    pi_x,
    hamming_profile,
    tvd_coherent,
    mixing_vs_n,
    tvd_decoherent,
    mixing_vs_p,
    mixing_vs_n_deco,
};

enum class OutputFormat { csv, json };

const char* to_string(Mode m);
const char* to_string(FigureId f);
const char* to_string(OutputFormat f);
std::optional<Mode> mode_from_string(const std::string& s);
std::optional<FigureId> figure_from_string(const std::string& s);
std::optional<OutputFormat> format_from_string(const std::string& s);

struct ExperimentConfig {
    std::optional<Mode> mode;
    std::optional<FigureId> figure;
    int n = 8;
    std::optional<std::int64_t> t_max;  // unset -> per-figure default
    double p = 0.1;
    std::vector<double> epsilons;       // empty -> per-figure default
    std::int64_t trials = 200;
    std::uint64_t seed = 1;
    std::vector<int> sweep_n;           // empty -> per-figure default
    std::vector<double> sweep_p;
    std::string out;                    // empty -> <figure>.<format>
    OutputFormat format = OutputFormat::csv;
    int jobs = 0;                       // 0 -> hardware concurrency
};

struct ValidationIssue {
    enum class Kind { config, resource };
    Kind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const { return issues.empty(); }
    bool has_config_error() const;
    bool has_resource_error() const;
    void add_config(std::string msg);
    void add_resource(std::string msg);
    std::string joined() const;
};

// Applies "key = value" lines ('#' comments, blank lines allowed) on top of
// cfg. Unknown keys and unparsable values are reported, never thrown.
ValidationReport apply_key_values(ExperimentConfig& cfg, const std::string& text);

// Resolves the figure/mode pair and per-figure defaults, then range-checks
// every field. All problems are reported together.
ValidationReport finalize_and_validate(ExperimentConfig& cfg);

struct ConfigResult {
    ExperimentConfig cfg;
    ValidationReport report;
};

// Parse + finalize + validate raw config text against the defaults.
ConfigResult validate_config(const std::string& raw_text);

// Resolved simulation horizon for one sweep point (0 sentinel never leaks out).
std::int64_t resolved_t_max(const ExperimentConfig& cfg, FigureId figure, int n);

std::vector<int> default_sweep_n(FigureId figure);
std::vector<double> default_sweep_p(FigureId figure);
std::vector<double> default_epsilons(FigureId figure);
Mode mode_for_figure(FigureId figure);

}  // namespace hyperwalk::cli
