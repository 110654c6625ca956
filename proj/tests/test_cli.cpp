#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string output_path;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "hyperwalk_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args, const std::string& out_name,
                  const std::string& env_prefix = "") {
    const fs::path out = scratch_dir() / out_name;
    std::ostringstream cmd;
    cmd << env_prefix << HYPERWALK_BIN_PATH << " " << args << " --out " << out.string()
        << " >/dev/null 2>&1";
    const int raw = std::system(cmd.str().c_str());
    return {WEXITSTATUS(raw), out.string()};
}

// CSV rows without the commented preamble
std::vector<std::string> body_lines(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    return lines;
}

std::vector<double> parse_row(const std::string& line) {
    std::vector<double> out;
    std::istringstream is(line);
    std::string cell;
    while (std::getline(is, cell, ',')) out.push_back(std::stod(cell));
    return out;
}

}  // namespace

TEST_CASE("pi_x figure emits the closed-form distribution") {
    const RunResult r = run_cli("--figure pi_x --n 3", "pi3.csv");
    REQUIRE(r.exit_code == 0);
    const auto lines = body_lines(r.output_path);
    REQUIRE(lines.size() == 9);  // header + 8 rows
    CHECK(lines[0] == "x,pi");

    std::vector<double> pi;
    for (std::size_t i = 1; i < lines.size(); ++i) pi.push_back(parse_row(lines[i])[1]);
    CHECK(pi[0] == doctest::Approx(0.171875).epsilon(1e-12));
    double total = 0.0;
    for (std::size_t x = 0; x < 8; ++x) {
        CHECK(pi[x] == doctest::Approx(pi[7 - x]).epsilon(1e-12));
        total += pi[x];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("hamming_profile at n=25 has heavy endpoints") {
    const RunResult r = run_cli("--figure hamming_profile --n 25", "prof25.csv");
    REQUIRE(r.exit_code == 0);
    const auto lines = body_lines(r.output_path);
    REQUIRE(lines.size() == 27);
    const double p0 = parse_row(lines[1])[1];
    const double pmid = parse_row(lines[13])[1];
    const double pn = parse_row(lines[26])[1];
    CHECK(p0 > pmid);
    CHECK(pn > pmid);
    CHECK(p0 == doctest::Approx(pn).epsilon(1e-9));
}

TEST_CASE("identical configs give byte-identical bodies") {
    const std::string args =
        "--figure mixing_vs_p --n 4 --trials 8 --t-max 150 --sweep-p 0.1 --sweep-p 0.3 --seed 99";
    const RunResult a = run_cli(args, "rep_a.csv");
    const RunResult b = run_cli(args, "rep_b.csv");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(body_lines(a.output_path) == body_lines(b.output_path));
}

TEST_CASE("exit codes distinguish config, resource and success") {
    CHECK(run_cli("--figure tvd_decoherent --n 4 --p 1.5 --t-max 5 --trials 2", "bad_p.csv").exit_code ==
          2);
    CHECK(run_cli("--figure tvd_coherent --n 20 --t-max 5", "big_n.csv").exit_code == 3);
    CHECK(run_cli("--figure pi_x --n 3", "ok.csv").exit_code == 0);
    CHECK(run_cli("--mode sweep", "no_fig.csv").exit_code == 2);
}

TEST_CASE("HYPERWALK_MAX_N lifts and lowers the state-vector cap") {
    const RunResult lifted =
        run_cli("--figure tvd_coherent --n 13 --t-max 2", "n13.csv", "HYPERWALK_MAX_N=14 ");
    CHECK(lifted.exit_code == 0);
    const RunResult lowered =
        run_cli("--figure tvd_coherent --n 13 --t-max 2", "n13b.csv", "HYPERWALK_MAX_N=12 ");
    CHECK(lowered.exit_code == 3);
}

TEST_CASE("json output parses and matches the csv row count") {
    const RunResult c = run_cli("--figure pi_x --n 4", "pi4.csv");
    const RunResult j = run_cli("--figure pi_x --n 4 --format json", "pi4.json");
    REQUIRE(c.exit_code == 0);
    REQUIRE(j.exit_code == 0);

    std::ifstream in(j.output_path);
    nlohmann::json doc = nlohmann::json::parse(in);
    CHECK(doc["columns"].size() == 2);
    CHECK(doc["rows"].size() == 16);
    CHECK(doc["metadata"]["figure"] == "pi_x");
    CHECK(body_lines(c.output_path).size() == 17);

    const double pi0_json = doc["rows"][0][1].get<double>();
    const double pi0_csv = parse_row(body_lines(c.output_path)[1])[1];
    CHECK(pi0_json == pi0_csv);
}

TEST_CASE("sweep and decoherent figures emit the documented columns") {
    const RunResult d = run_cli(
        "--figure tvd_decoherent --n 4 --trials 6 --t-max 40 --sweep-p 0,0.1 --seed 4", "sm_tvdd.csv");
    REQUIRE(d.exit_code == 0);
    auto lines = body_lines(d.output_path);
    CHECK(lines[0] == "p,t,tvd_to_uniform,tvd_to_uniform_se,tvd_to_pi");
    CHECK(lines.size() == 1 + 2 * 40);

    const RunResult m =
        run_cli("--figure mixing_vs_n --sweep-n 4,5 --epsilon 0.4", "sm_mvn.csv");
    REQUIRE(m.exit_code == 0);
    lines = body_lines(m.output_path);
    CHECK(lines[0] == "n,epsilon,mixing_time,t_max");
    REQUIRE(lines.size() == 3);
    CHECK(parse_row(lines[1])[2] > 0);  // found within the default horizon

    const RunResult nd = run_cli(
        "--figure mixing_vs_n_deco --sweep-n 4 --trials 6 --t-max 300 --seed 9", "sm_mvnd.csv");
    REQUIRE(nd.exit_code == 0);
    lines = body_lines(nd.output_path);
    CHECK(lines[0] == "n,epsilon,mixing_time_decoherent,mixing_time_coherent,t_max");
    REQUIRE(lines.size() == 2);
    const auto row = parse_row(lines[1]);
    CHECK(row[2] > row[3]);  // decoherent mixing is slower than coherent
}

TEST_CASE("config file plus flag overrides") {
    const fs::path cfg_path = scratch_dir() / "run.cfg";
    {
        std::ofstream cfg(cfg_path);
        cfg << "figure = pi_x\n"
            << "n = 3\n"
            << "# comment line\n"
            << "seed = 5\n";
    }
    const RunResult r = run_cli("--config " + cfg_path.string() + " --n 4", "override.csv");
    REQUIRE(r.exit_code == 0);
    CHECK(body_lines(r.output_path).size() == 17);  // n=4 won over n=3
}
