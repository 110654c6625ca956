#include <doctest.h>

#include <string>

#include "hyperwalk/config.hpp"

using namespace hyperwalk::cli;

TEST_CASE("out-of-range p is reported by field name") {
    const ConfigResult r = validate_config("figure = tvd_decoherent\np = 1.5\n");
    REQUIRE_FALSE(r.report.ok());
    bool mentions_p = false;
    for (const auto& i : r.report.issues)
        if (i.message.find("p = 1.5") != std::string::npos) mentions_p = true;
    CHECK(mentions_p);
    CHECK(r.report.has_config_error());
}

TEST_CASE("state-vector modes are capped, closed form is not") {
    const ConfigResult big_sim = validate_config("figure = tvd_coherent\nn = 20\n");
    REQUIRE_FALSE(big_sim.report.ok());
    CHECK(big_sim.report.has_resource_error());
    CHECK_FALSE(big_sim.report.has_config_error());

    const ConfigResult closed = validate_config("mode = closed_form\nn = 40\n");
    CHECK(closed.report.ok());
    CHECK(closed.cfg.figure == FigureId::hamming_profile);

    const ConfigResult too_big = validate_config("mode = closed_form\nn = 65\n");
    CHECK_FALSE(too_big.report.ok());
}

TEST_CASE("all validation errors are collected, not just the first") {
    const ConfigResult r =
        validate_config("figure = mixing_vs_p\np = -0.5\nepsilon = 3.0\nbogus_key = 1\ntrials = 0\n");
    REQUIRE_FALSE(r.report.ok());
    CHECK(r.report.issues.size() >= 4);
}

TEST_CASE("unknown keys and malformed lines are flagged") {
    const ConfigResult r = validate_config("figure = pi_x\nwibble = 3\nnonsense line\n");
    REQUIRE_FALSE(r.report.ok());
    CHECK(r.report.issues.size() == 2);
}

TEST_CASE("later assignments override earlier ones") {
    ExperimentConfig cfg;
    auto rep1 = apply_key_values(cfg, "n = 4\nseed = 7\n");
    auto rep2 = apply_key_values(cfg, "n = 6\n");
    CHECK(rep1.ok());
    CHECK(rep2.ok());
    CHECK(cfg.n == 6);
    CHECK(cfg.seed == 7);
}

TEST_CASE("figure inference from mode") {
    CHECK(validate_config("mode = coherent\n").cfg.figure == FigureId::tvd_coherent);
    CHECK(validate_config("mode = decoherent\n").cfg.figure == FigureId::tvd_decoherent);
    CHECK(validate_config("mode = closed_form\n").cfg.figure == FigureId::hamming_profile);

    const ConfigResult sweep = validate_config("mode = sweep\n");
    CHECK_FALSE(sweep.report.ok());

    const ConfigResult none = validate_config("n = 5\n");
    CHECK_FALSE(none.report.ok());
}

TEST_CASE("figure/mode and axis compatibility") {
    const ConfigResult wrong_mode = validate_config("figure = pi_x\nmode = coherent\n");
    CHECK_FALSE(wrong_mode.report.ok());

    const ConfigResult wrong_axis = validate_config("figure = mixing_vs_n\nsweep_p = 0.1,0.2\n");
    CHECK_FALSE(wrong_axis.report.ok());

    const ConfigResult ok = validate_config("figure = mixing_vs_p\nsweep_p = 0.1,0.2\nn = 6\n");
    CHECK(ok.report.ok());
    CHECK(ok.cfg.mode == Mode::sweep);
    CHECK(ok.cfg.sweep_p.size() == 2);
}

TEST_CASE("defaults are filled per figure") {
    const ConfigResult r = validate_config("figure = mixing_vs_n\n");
    REQUIRE(r.report.ok());
    CHECK(r.cfg.sweep_n == std::vector<int>{4, 5, 6, 7, 8, 9, 10});
    CHECK(r.cfg.epsilons == std::vector<double>{0.4, 0.2, 0.1});
    CHECK(resolved_t_max(r.cfg, FigureId::mixing_vs_n, 10) == 2000);

    const ConfigResult t = validate_config("figure = tvd_coherent\n");
    CHECK(resolved_t_max(t.cfg, FigureId::tvd_coherent, 8) == 10000);
    const ConfigResult t2 = validate_config("figure = tvd_coherent\nt_max = 500\n");
    CHECK(resolved_t_max(t2.cfg, FigureId::tvd_coherent, 8) == 500);
}

TEST_CASE("epsilon range checks") {
    CHECK(validate_config("figure = mixing_vs_p\nepsilon = 2.0\n").report.ok());
    CHECK_FALSE(validate_config("figure = mixing_vs_p\nepsilon = 0\n").report.ok());
    CHECK_FALSE(validate_config("figure = mixing_vs_p\nepsilon = 2.1\n").report.ok());
}

TEST_CASE("t_max limits") {
    CHECK_FALSE(validate_config("figure = tvd_coherent\nt_max = 0\n").report.ok());
    const ConfigResult huge = validate_config("figure = tvd_coherent\nt_max = 200000\n");
    REQUIRE_FALSE(huge.report.ok());
    CHECK(huge.report.has_resource_error());
}
