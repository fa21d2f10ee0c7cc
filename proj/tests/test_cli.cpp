// Integration tests driving the wqed binary: exit codes, artifact files, and
// the dispatcher-only dependency rule for the CLI translation unit.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommandResult {
    int exit_code{-1};
    std::string output;
};

CommandResult run_cli(const std::string& args) {
    const fs::path out_file = fs::temp_directory_path() / "wqed_cli_out.txt";
    const std::string command =
        std::string(WQED_CLI_PATH) + " " + args + " > " + out_file.string() + " 2>&1";
    const int raw = std::system(command.c_str());
    CommandResult result;
    result.exit_code = WEXITSTATUS(raw);
    std::ifstream in(out_file);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    return result;
}

fs::path write_temp(const std::string& name, const std::string& text) {
    const fs::path path = fs::temp_directory_path() / name;
    std::ofstream out(path);
    out << text;
    return path;
}

std::size_t count_lines(const fs::path& file) {
    std::ifstream in(file);
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line)) ++count;
    return count;
}

}  // namespace

TEST_CASE("renorm forward mode prints the table") {
    const CommandResult result = run_cli(
        "renorm --omega0 31.41592653589793 --gamma 3.141592653589793 "
        "--lambda-ir 0 --lambda-uv 62.83185307179586");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("omega_0,gamma,lambda_ir,lambda_uv,omega_A,Gamma,f,H,valid") !=
          std::string::npos);
    CHECK(result.output.find("3.24488040482") != std::string::npos);
    CHECK(result.output.find("true") != std::string::npos);
}

TEST_CASE("renorm inverse mode applies the prescription") {
    const CommandResult result = run_cli(
        "renorm --omega-a 31.41592653589793 --gamma-phys 3.141592653589793 "
        "--half-width 15.707963267948966");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("2.95356299353") != std::string::npos);  // bare gamma
    CHECK(result.output.find("15.7079632679") != std::string::npos);  // lambda_ir
}

TEST_CASE("renorm invalid region exits with code 2 and names the condition") {
    const CommandResult result =
        run_cli("renorm --omega0 10 --gamma 40 --lambda-ir 8 --lambda-uv 12");
    CHECK(result.exit_code == 2);
    CHECK(result.output.find("gamma >= pi * H") != std::string::npos);
}

TEST_CASE("renorm rejects incomplete or mixed flag sets") {
    CHECK(run_cli("renorm --omega0 10 --gamma 1").exit_code == 1);
    CHECK(run_cli("renorm --omega0 10 --gamma 1 --lambda-ir 0 --lambda-uv 20 "
                  "--half-width 3")
              .exit_code == 1);
}

TEST_CASE("grid-info prints grid and dimension data") {
    const fs::path cfg = write_temp("wqed_gridinfo.json", R"({
        "model": {"L": 100, "lambda_ir": 0, "lambda_uv": 62.83185307179586,
                  "omega_0": 31.41592653589793, "gamma": 3.141592653589793}})");
    const CommandResult result = run_cli("grid-info --config " + cfg.string());
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("modes,n_min,n_max,spacing,k_min,k_max,dim_formula,dim_state") !=
          std::string::npos);
    CHECK(result.output.find("1001,0,1000,") != std::string::npos);
    CHECK(result.output.find("2001,2003") != std::string::npos);
}

TEST_CASE("scatter writes trajectory and renormalization-annotated summary") {
    const fs::path cfg = write_temp("wqed_scatter.json", R"({
        "model": {"L": 30, "lambda_ir": 18.84955592153876, "lambda_uv": 43.98229715025711,
                  "omega_0": 31.41592653589793, "gamma": 3.141592653589793},
        "packet": {"k_p": 31.41592653589793, "delta_k": 0.4712388980384689, "x_0": -7.5},
        "time": {"T": 15, "n_steps": 900}})");
    const fs::path out_dir = fs::temp_directory_path() / "wqed_scatter_out";
    fs::remove_all(out_dir);

    const CommandResult result =
        run_cli("scatter --config " + cfg.string() + " --out " + out_dir.string());
    CHECK(result.exit_code == 0);
    CHECK(fs::exists(out_dir / "trajectory.csv"));
    CHECK(fs::exists(out_dir / "summary.json"));
    CHECK(count_lines(out_dir / "trajectory.csv") == 902);  // header + steps 0..900

    std::ifstream summary_in(out_dir / "summary.json");
    const json summary = json::parse(summary_in);
    CHECK(summary.at("experiment") == "scatter");
    CHECK(summary.at("renormalization").contains("omega_A"));
    CHECK(summary.at("renormalization").contains("Gamma"));
    CHECK(summary.at("config").at("model").at("L") == 30);
    const double r = summary.at("results").at("final_R").get<double>();
    CHECK(r > 0.8);
}

TEST_CASE("scatter honors the recording cadence") {
    const fs::path cfg = write_temp("wqed_scatter_cadence.json", R"({
        "model": {"L": 30, "lambda_ir": 18.84955592153876, "lambda_uv": 43.98229715025711,
                  "omega_0": 31.41592653589793, "gamma": 3.141592653589793},
        "packet": {"k_p": 31.41592653589793, "delta_k": 0.4712388980384689, "x_0": -7.5},
        "time": {"T": 15, "n_steps": 900}})");
    const fs::path out_dir = fs::temp_directory_path() / "wqed_cadence_out";
    fs::remove_all(out_dir);
    const CommandResult result = run_cli("scatter --config " + cfg.string() + " --out " +
                                         out_dir.string() + " --record-every 100");
    CHECK(result.exit_code == 0);
    CHECK(count_lines(out_dir / "trajectory.csv") == 11);  // header + 0,100,...,900
}

TEST_CASE("sweep writes one row per value") {
    const fs::path cfg = write_temp("wqed_sweep.json", R"({
        "model": {"L": 30, "lambda_ir": 18.84955592153876, "lambda_uv": 43.98229715025711,
                  "omega_0": 31.41592653589793, "gamma": 3.141592653589793},
        "packet": {"k_p": 31.41592653589793, "delta_k": 0.4712388980384689, "x_0": -7.5},
        "time": {"T": 15, "n_steps": 600},
        "sweep": {"variable": "omega_p",
                  "values": [30.313342869733237, 31.41592653589793, 32.51850020206263]}})");
    const fs::path out_dir = fs::temp_directory_path() / "wqed_sweep_out";
    fs::remove_all(out_dir);

    const CommandResult result = run_cli("sweep --config " + cfg.string() + " --out " +
                                         out_dir.string() + " --threads 2");
    CHECK(result.exit_code == 0);
    CHECK(count_lines(out_dir / "sweep.csv") == 4);

    std::ifstream summary_in(out_dir / "summary.json");
    const json summary = json::parse(summary_in);
    CHECK(summary.at("results").at("rows").size() == 3);
    CHECK(summary.at("results").at("failed_rows") == 0);
}

TEST_CASE("decay writes the fit summary") {
    const fs::path cfg = write_temp("wqed_decay.json", R"({
        "model": {"L": 30, "lambda_ir": 18.84955592153876, "lambda_uv": 43.98229715025711,
                  "omega_0": 31.41592653589793, "gamma": 3.141592653589793},
        "time": {"T": 3.5, "n_steps": 1750}})");
    const fs::path out_dir = fs::temp_directory_path() / "wqed_decay_out";
    fs::remove_all(out_dir);

    const CommandResult result =
        run_cli("decay --config " + cfg.string() + " --out " + out_dir.string());
    CHECK(result.exit_code == 0);
    std::ifstream summary_in(out_dir / "summary.json");
    const json summary = json::parse(summary_in);
    const double gamma_fit = summary.at("results").at("Gamma_fit").get<double>();
    const double gamma_pred = summary.at("renormalization").at("Gamma").get<double>();
    CHECK(std::abs(gamma_fit - gamma_pred) / gamma_pred < 0.05);
    CHECK(fs::exists(out_dir / "trajectory.csv"));
}

TEST_CASE("converge writes the study table") {
    const fs::path cfg = write_temp("wqed_converge.json", R"({
        "physical": {"omega_a": 31.41592653589793, "gamma_phys": 3.141592653589793},
        "converge": {"half_widths": [6.283185307179586, 3.141592653589793],
                     "omega_p": [31.41592653589793],
                     "n_steps": [60, 240, 960],
                     "L": 30, "T": 15, "delta_k": 0.4712388980384689, "x_0": -7.5}})");
    const fs::path out_dir = fs::temp_directory_path() / "wqed_converge_out";
    fs::remove_all(out_dir);

    const CommandResult result = run_cli("converge --config " + cfg.string() + " --out " +
                                         out_dir.string() + " --threads 2");
    CHECK(result.exit_code == 0);
    CHECK(count_lines(out_dir / "converge.csv") == 7);  // header + 2*1*3 cells
    std::ifstream summary_in(out_dir / "summary.json");
    const json summary = json::parse(summary_in);
    CHECK(summary.at("results").at("minimal_steps").size() == 2);
}

TEST_CASE("schema violations exit with code 1") {
    const fs::path cfg = write_temp("wqed_bad.json", R"({
        "model": {"L": 30, "lambda_ir": 0, "lambda_uv": 43.98, "omega_0": 31.4,
                  "gamma": 3.14, "unknown_key": 5},
        "packet": {"k_p": 31.4, "delta_k": 0.47, "x_0": -7.5},
        "time": {"T": 15, "n_steps": 100}})");
    const CommandResult result =
        run_cli("scatter --config " + cfg.string() + " --out /tmp/wqed_never");
    CHECK(result.exit_code == 1);
    CHECK(result.output.find("unknown key") != std::string::npos);
    CHECK_FALSE(fs::exists("/tmp/wqed_never/summary.json"));
}

TEST_CASE("missing config file exits with code 1") {
    CHECK(run_cli("scatter --config /nonexistent/cfg.json --out /tmp/wqed_never2")
              .exit_code == 1);
}

TEST_CASE("unusable output location exits with code 1 and writes nothing") {
    const fs::path cfg = write_temp("wqed_ro.json", R"({
        "model": {"L": 30, "lambda_ir": 18.84955592153876, "lambda_uv": 43.98229715025711,
                  "omega_0": 31.41592653589793, "gamma": 3.141592653589793},
        "packet": {"k_p": 31.41592653589793, "delta_k": 0.4712388980384689, "x_0": -7.5},
        "time": {"T": 15, "n_steps": 100}})");
    // /dev/null is not a directory; no artifact can be created under it
    const CommandResult result =
        run_cli("scatter --config " + cfg.string() + " --out /dev/null/out");
    CHECK(result.exit_code == 1);
}

TEST_CASE("numerical abort exits with code 3 and records diagnostics") {
    // renorm-valid parameters (gamma < pi*H) but a step size far beyond the
    // RK4 stability limit
    const fs::path cfg = write_temp("wqed_abort.json", R"({
        "model": {"L": 30, "lambda_ir": 0.5, "lambda_uv": 20,
                  "omega_0": 10, "gamma": 20},
        "packet": {"k_p": 10, "delta_k": 1.0, "x_0": -7.5},
        "time": {"T": 1000, "n_steps": 200}})");
    const fs::path out_dir = fs::temp_directory_path() / "wqed_abort_out";
    fs::remove_all(out_dir);

    const CommandResult result =
        run_cli("scatter --config " + cfg.string() + " --out " + out_dir.string());
    CHECK(result.exit_code == 3);
    CHECK_FALSE(fs::exists(out_dir / "trajectory.csv"));
    std::ifstream summary_in(out_dir / "summary.json");
    const json summary = json::parse(summary_in);
    CHECK(summary.at("error").at("type") == "numerical-abort");
    CHECK(summary.at("error").at("step").get<std::size_t>() >= 1);
}

TEST_CASE("cli stays a thin dispatcher over experiments and renorm") {
    std::ifstream source(WQED_TOOLS_SOURCE);
    REQUIRE(source.good());
    const std::set<std::string> allowed{"wqed/experiments.hpp", "wqed/renorm.hpp",
                                        "wqed/run_config.hpp"};
    const std::regex include_pattern{R"(#include\s+\"(wqed/[^\"]+)\")"};
    std::string line;
    while (std::getline(source, line)) {
        std::smatch match;
        if (std::regex_search(line, match, include_pattern)) {
            CHECK(allowed.count(match[1].str()) == 1);
        }
    }
}
