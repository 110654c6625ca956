#include "hyperwalk/config.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "hyperwalk/metrics.hpp"
#include "hyperwalk/walk.hpp"

namespace hyperwalk::cli {

const char* to_string(Mode m) {
    switch (m) {
        case Mode::coherent: return "coherent";
        case Mode::decoherent: return "decoherent";
        case Mode::closed_form: return "closed_form";
        case Mode::sweep: return "sweep";
    }
    return "?";
}

const char* to_string(FigureId f) {
    switch (f) {
        case FigureId::pi_x: return "pi_x";
        case FigureId::hamming_profile: return "hamming_profile";
        case FigureId::tvd_coherent: return "tvd_coherent";
        case FigureId::mixing_vs_n: return "mixing_vs_n";
        case FigureId::tvd_decoherent: return "tvd_decoherent";
        case FigureId::mixing_vs_p: return "mixing_vs_p";
        case FigureId::mixing_vs_n_deco: return "mixing_vs_n_deco";
    }
    return "?";
}

const char* to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

std::optional<Mode> mode_from_string(const std::string& s) {
    for (Mode m : {Mode::coherent, Mode::decoherent, Mode::closed_form, Mode::sweep})
        if (s == to_string(m)) return m;
    return std::nullopt;
}

std::optional<FigureId> figure_from_string(const std::string& s) {
    for (FigureId f : {FigureId::pi_x, FigureId::hamming_profile, FigureId::tvd_coherent,
                       FigureId::mixing_vs_n, FigureId::tvd_decoherent, FigureId::mixing_vs_p,
                       FigureId::mixing_vs_n_deco})
        if (s == to_string(f)) return f;
    return std::nullopt;
}

std::optional<OutputFormat> format_from_string(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    return std::nullopt;
}

void ValidationReport::add_config(std::string msg) {
    issues.push_back({ValidationIssue::Kind::config, std::move(msg)});
}
void ValidationReport::add_resource(std::string msg) {
    issues.push_back({ValidationIssue::Kind::resource, std::move(msg)});
}
bool ValidationReport::has_config_error() const {
    return std::any_of(issues.begin(), issues.end(),
                       [](const auto& i) { return i.kind == ValidationIssue::Kind::config; });
}
bool ValidationReport::has_resource_error() const {
    return std::any_of(issues.begin(), issues.end(),
                       [](const auto& i) { return i.kind == ValidationIssue::Kind::resource; });
}
std::string ValidationReport::joined() const {
    std::ostringstream os;
    for (const auto& i : issues) {
        os << (i.kind == ValidationIssue::Kind::config ? "config error: " : "resource error: ")
           << i.message << '\n';
    }
    return os.str();
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

template <typename T>
bool parse_number(const std::string& s, T& out) {
    if constexpr (std::is_floating_point_v<T>) {
        try {
            std::size_t pos = 0;
            out = static_cast<T>(std::stod(s, &pos));
            return pos == s.size();
        } catch (...) {
            return false;
        }
    } else {
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc{} && ptr == s.data() + s.size();
    }
}

bool figure_uses_state_vector(FigureId f) {
    return f != FigureId::pi_x && f != FigureId::hamming_profile;
}

bool figure_sweeps_n(FigureId f) {
    return f == FigureId::mixing_vs_n || f == FigureId::mixing_vs_n_deco;
}

bool figure_sweeps_p(FigureId f) {
    return f == FigureId::mixing_vs_p || f == FigureId::tvd_decoherent;
}

bool figure_is_decoherent(FigureId f) {
    return f == FigureId::tvd_decoherent || f == FigureId::mixing_vs_p ||
           f == FigureId::mixing_vs_n_deco;
}

}  // namespace

Mode mode_for_figure(FigureId figure) {
    switch (figure) {
        case FigureId::pi_x:
        case FigureId::hamming_profile: return Mode::closed_form;
        case FigureId::tvd_coherent: return Mode::coherent;
        case FigureId::tvd_decoherent: return Mode::decoherent;
        case FigureId::mixing_vs_n:
        case FigureId::mixing_vs_p:
        case FigureId::mixing_vs_n_deco: return Mode::sweep;
    }
    return Mode::coherent;
}

std::vector<int> default_sweep_n(FigureId figure) {
    if (figure == FigureId::mixing_vs_n) return {4, 5, 6, 7, 8, 9, 10};
    if (figure == FigureId::mixing_vs_n_deco) return {4, 5, 6, 7, 8, 9};
    return {};
}

std::vector<double> default_sweep_p(FigureId figure) {
    if (figure == FigureId::mixing_vs_p) return {0.02, 0.05, 0.1, 0.2, 0.3, 0.4};
    if (figure == FigureId::tvd_decoherent) return {0.0, 0.02, 0.05, 0.1, 0.2};
    return {};
}

std::vector<double> default_epsilons(FigureId figure) {
    if (figure == FigureId::mixing_vs_n) return {0.4, 0.2, 0.1};
    if (figure == FigureId::mixing_vs_p || figure == FigureId::mixing_vs_n_deco) return {0.4};
    return {};
}

std::int64_t resolved_t_max(const ExperimentConfig& cfg, FigureId figure, int n) {
    if (cfg.t_max) return *cfg.t_max;
    switch (figure) {
        case FigureId::tvd_coherent: return 10000;
        case FigureId::tvd_decoherent: return 1000;
        case FigureId::mixing_vs_n: return metrics::default_t_max(n);
        case FigureId::mixing_vs_p: return 2000;
        case FigureId::mixing_vs_n_deco: return std::max<std::int64_t>(metrics::default_t_max(n), 3000);
        default: return 1;
    }
}

ValidationReport apply_key_values(ExperimentConfig& cfg, const std::string& text) {
    ValidationReport report;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            report.add_config("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto bad_value = [&] {
            report.add_config("key '" + key + "': cannot parse value '" + value + "'");
        };

        if (key == "mode") {
            if (auto m = mode_from_string(value)) cfg.mode = m;
            else report.add_config("key 'mode': unknown mode '" + value + "'");
        } else if (key == "figure") {
            if (auto f = figure_from_string(value)) cfg.figure = f;
            else report.add_config("key 'figure': unknown figure '" + value + "'");
        } else if (key == "n") {
            if (!parse_number(value, cfg.n)) bad_value();
        } else if (key == "t_max") {
            std::int64_t v;
            if (parse_number(value, v)) cfg.t_max = v;
            else bad_value();
        } else if (key == "p") {
            if (!parse_number(value, cfg.p)) bad_value();
        } else if (key == "epsilon") {
            std::vector<double> eps;
            bool good = true;
            for (const auto& item : split_list(value)) {
                double e;
                if (parse_number(item, e)) eps.push_back(e);
                else good = false;
            }
            if (good && !eps.empty()) cfg.epsilons = eps;
            else bad_value();
        } else if (key == "trials") {
            if (!parse_number(value, cfg.trials)) bad_value();
        } else if (key == "seed") {
            if (!parse_number(value, cfg.seed)) bad_value();
        } else if (key == "sweep_n") {
            std::vector<int> ns;
            bool good = true;
            for (const auto& item : split_list(value)) {
                int v;
                if (parse_number(item, v)) ns.push_back(v);
                else good = false;
            }
            if (good && !ns.empty()) cfg.sweep_n = ns;
            else bad_value();
        } else if (key == "sweep_p") {
            std::vector<double> ps;
            bool good = true;
            for (const auto& item : split_list(value)) {
                double v;
                if (parse_number(item, v)) ps.push_back(v);
                else good = false;
            }
            if (good && !ps.empty()) cfg.sweep_p = ps;
            else bad_value();
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "format") {
            if (auto f = format_from_string(value)) cfg.format = *f;
            else report.add_config("key 'format': expected csv or json, got '" + value + "'");
        } else if (key == "jobs") {
            if (!parse_number(value, cfg.jobs)) bad_value();
        } else {
            report.add_config("unknown key '" + key + "'");
        }
    }
    return report;
}

ValidationReport finalize_and_validate(ExperimentConfig& cfg) {
    ValidationReport report;

    if (!cfg.figure) {
        if (!cfg.mode) {
            report.add_config("either a figure or a mode is required");
            return report;
        }
        switch (*cfg.mode) {
            case Mode::coherent: cfg.figure = FigureId::tvd_coherent; break;
            case Mode::decoherent: cfg.figure = FigureId::tvd_decoherent; break;
            case Mode::closed_form: cfg.figure = FigureId::hamming_profile; break;
            case Mode::sweep:
                report.add_config("mode 'sweep' needs an explicit figure to select the sweep axis");
                return report;
        }
    }
    const FigureId fig = *cfg.figure;
    if (cfg.mode && *cfg.mode != mode_for_figure(fig)) {
        report.add_config(std::string("figure '") + to_string(fig) + "' runs in mode '" +
                          to_string(mode_for_figure(fig)) + "', not '" + to_string(*cfg.mode) + "'");
    }
    cfg.mode = mode_for_figure(fig);

    if (!cfg.sweep_n.empty() && !figure_sweeps_n(fig))
        report.add_config(std::string("figure '") + to_string(fig) + "' does not sweep n");
    if (!cfg.sweep_p.empty() && !figure_sweeps_p(fig))
        report.add_config(std::string("figure '") + to_string(fig) + "' does not sweep p");
    if (cfg.sweep_n.empty()) cfg.sweep_n = default_sweep_n(fig);
    if (cfg.sweep_p.empty()) cfg.sweep_p = default_sweep_p(fig);
    if (cfg.epsilons.empty()) cfg.epsilons = default_epsilons(fig);

    if (cfg.n < 2) report.add_config("n = " + std::to_string(cfg.n) + " out of range (n >= 2)");
    for (int n : cfg.sweep_n)
        if (n < 2) report.add_config("sweep_n entry " + std::to_string(n) + " out of range (n >= 2)");

    // dimension caps
    int max_n_needed = cfg.n;
    for (int n : cfg.sweep_n) max_n_needed = std::max(max_n_needed, n);
    if (figure_uses_state_vector(fig)) {
        const int cap = walk::max_state_dim();
        if (max_n_needed > cap)
            report.add_resource("n = " + std::to_string(max_n_needed) +
                                " exceeds the state-vector cap " + std::to_string(cap) +
                                " (override with HYPERWALK_MAX_N)");
        else if (max_n_needed > 24)
            report.add_resource("n = " + std::to_string(max_n_needed) +
                                " exceeds the closed-form reference cap 24");
    } else if (fig == FigureId::pi_x) {
        if (cfg.n > 20)
            report.add_resource("pi_x would emit 2^" + std::to_string(cfg.n) +
                                " rows; limited to n <= 20 (use hamming_profile instead)");
        if (cfg.n > 64) report.add_config("n = " + std::to_string(cfg.n) + " out of range (n <= 64)");
    } else {  // hamming_profile
        if (cfg.n > 64) report.add_config("n = " + std::to_string(cfg.n) + " out of range (n <= 64)");
    }

    auto check_p = [&](double p, const char* field) {
        if (!(p >= 0.0) || p > 1.0)
            report.add_config(std::string(field) + " = " + std::to_string(p) +
                              " out of range [0, 1]");
    };
    check_p(cfg.p, "p");
    for (double p : cfg.sweep_p) check_p(p, "sweep_p entry");

    for (double e : cfg.epsilons)
        if (!(e > 0.0) || e > 2.0)
            report.add_config("epsilon = " + std::to_string(e) + " out of range (0, 2]");

    if (cfg.trials < 1) report.add_config("trials must be positive");
    if (cfg.trials > 1000000) report.add_resource("trials capped at 10^6");

    if (cfg.t_max) {
        if (*cfg.t_max < 1) report.add_config("t_max must be positive");
        if (*cfg.t_max > 100000) report.add_resource("t_max capped at 10^5");
    }
    if (cfg.jobs < 0) report.add_config("jobs must be nonnegative");

    // ensemble accumulator footprint
    if (figure_is_decoherent(fig) && cfg.n >= 2 && cfg.n <= 28) {
        std::int64_t worst_t = resolved_t_max(cfg, fig, max_n_needed);
        const double bytes = 9.0 * double(worst_t + 1) * double(std::int64_t{1} << max_n_needed) * 8.0;
        if (bytes > 4.0 * (1ull << 30))
            report.add_resource("ensemble accumulators would need " +
                                std::to_string(std::int64_t(bytes / (1 << 20))) +
                                " MiB; reduce t_max or n");
    }
    return report;
}

ConfigResult validate_config(const std::string& raw_text) {
    ConfigResult r;
    r.report = apply_key_values(r.cfg, raw_text);
    ValidationReport more = finalize_and_validate(r.cfg);
    r.report.issues.insert(r.report.issues.end(), more.issues.begin(), more.issues.end());
    return r;
}

}  // namespace hyperwalk::cli
