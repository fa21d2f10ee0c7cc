#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wqed/run_config.hpp"

using namespace wqed;

namespace {

const char* kScatter = R"({
  "model": {"L": 100, "lambda_ir": 0, "lambda_uv": 62.83, "omega_0": 31.4, "gamma": 3.14},
  "packet": {"k_p": 31.4, "delta_k": 0.157, "x_0": -25},
  "time": {"T": 50, "n_steps": 5000}
})";

const char* kSweep = R"({
  "model": {"L": 100, "lambda_ir": 0, "lambda_uv": 62.83, "omega_0": 31.4, "gamma": 3.14},
  "packet": {"k_p": 31.4, "delta_k": 0.157, "x_0": -25, "channel": 1},
  "time": {"T": 50, "n_steps": 5000},
  "sweep": {"variable": "omega_p", "values": [30.0, 31.4, 32.8]}
})";

const char* kConverge = R"({
  "physical": {"omega_a": 31.4159, "gamma_phys": 3.1416},
  "converge": {"half_widths": [15.7, 9.4], "omega_p": [31.4159], "n_steps": [100, 400],
               "T": 50, "L": 100}
})";

}  // namespace

TEST_CASE("scatter config parses with defaults") {
    const RunConfig cfg = parse_run_config(kScatter, RunKind::Scatter);
    REQUIRE(cfg.model.has_value());
    REQUIRE(cfg.packet.has_value());
    REQUIRE(cfg.time.has_value());
    CHECK(cfg.model->length == 100.0);
    CHECK(cfg.packet->channel == 1);
    CHECK(cfg.time->n_steps == 5000);
    CHECK_FALSE(cfg.canonical_json.empty());
}

TEST_CASE("sweep config parses the variable") {
    const RunConfig cfg = parse_run_config(kSweep, RunKind::Sweep);
    REQUIRE(cfg.sweep.has_value());
    CHECK(cfg.sweep->variable == SweepVariable::OmegaP);
    CHECK(cfg.sweep->values.size() == 3);
}

TEST_CASE("converge config applies settings defaults") {
    const RunConfig cfg = parse_run_config(kConverge, RunKind::Converge);
    REQUIRE(cfg.converge.has_value());
    CHECK(cfg.converge->half_widths.size() == 2);
    CHECK(cfg.converge->n_steps_list == std::vector<std::size_t>{100, 400});
    CHECK(cfg.converge->settings.total_time == 50.0);
    CHECK(cfg.converge->settings.x_0 == -25.0);  // default
    REQUIRE(cfg.physical.has_value());
    CHECK(cfg.physical->decay_rate == 3.1416);
}

TEST_CASE("unknown keys are rejected at every level") {
    CHECK_THROWS_AS(parse_run_config(R"({
        "model": {"L": 100, "lambda_ir": 0, "lambda_uv": 62.83, "omega_0": 31.4,
                  "gamma": 3.14, "typo": 1},
        "packet": {"k_p": 31.4, "delta_k": 0.157, "x_0": -25},
        "time": {"T": 50, "n_steps": 100}})",
                                     RunKind::Scatter),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_run_config(R"({
        "model": {"L": 100, "lambda_ir": 0, "lambda_uv": 62.83, "omega_0": 31.4, "gamma": 3.14},
        "packet": {"k_p": 31.4, "delta_k": 0.157, "x_0": -25},
        "time": {"T": 50, "n_steps": 100},
        "stray_block": {}})",
                                     RunKind::Scatter),
                    std::invalid_argument);
}

TEST_CASE("missing blocks and malformed values are rejected") {
    CHECK_THROWS_AS(parse_run_config(R"({"model": {}})", RunKind::Scatter),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_run_config("not json at all", RunKind::Scatter),
                    std::invalid_argument);
    // non-integer step count
    CHECK_THROWS_AS(parse_run_config(R"({
        "model": {"L": 100, "lambda_ir": 0, "lambda_uv": 62.83, "omega_0": 31.4, "gamma": 3.14},
        "packet": {"k_p": 31.4, "delta_k": 0.157, "x_0": -25},
        "time": {"T": 50, "n_steps": 10.5}})",
                                     RunKind::Scatter),
                    std::invalid_argument);
    // string where a number belongs
    CHECK_THROWS_AS(parse_run_config(R"({
        "model": {"L": "100", "lambda_ir": 0, "lambda_uv": 62.83, "omega_0": 31.4, "gamma": 3.14},
        "packet": {"k_p": 31.4, "delta_k": 0.157, "x_0": -25},
        "time": {"T": 50, "n_steps": 100}})",
                                     RunKind::Scatter),
                    std::invalid_argument);
    // unknown sweep variable
    CHECK_THROWS_AS(parse_run_config(R"({
        "model": {"L": 100, "lambda_ir": 0, "lambda_uv": 62.83, "omega_0": 31.4, "gamma": 3.14},
        "packet": {"k_p": 31.4, "delta_k": 0.157, "x_0": -25},
        "time": {"T": 50, "n_steps": 100},
        "sweep": {"variable": "nonsense", "values": [1]}})",
                                     RunKind::Sweep),
                    std::invalid_argument);
    // model invariant violated (omega0 outside window)
    CHECK_THROWS_AS(parse_run_config(R"({
        "model": {"L": 100, "lambda_ir": 0, "lambda_uv": 20, "omega_0": 31.4, "gamma": 3.14},
        "packet": {"k_p": 10, "delta_k": 0.157, "x_0": -25},
        "time": {"T": 50, "n_steps": 100}})",
                                     RunKind::Scatter),
                    std::invalid_argument);
}

TEST_CASE("decay config with and without a fit block") {
    const char* with_fit = R"({
        "model": {"L": 100, "lambda_ir": 0, "lambda_uv": 62.83, "omega_0": 31.4, "gamma": 3.14},
        "time": {"T": 3.5, "n_steps": 1750},
        "fit": {"t_start": 0.4, "t_end": 2.5}})";
    const RunConfig cfg = parse_run_config(with_fit, RunKind::Decay);
    REQUIRE(cfg.fit.has_value());
    CHECK(cfg.fit->t_start == 0.4);

    const char* without_fit = R"({
        "model": {"L": 100, "lambda_ir": 0, "lambda_uv": 62.83, "omega_0": 31.4, "gamma": 3.14},
        "time": {"T": 3.5, "n_steps": 1750}})";
    CHECK_FALSE(parse_run_config(without_fit, RunKind::Decay).fit.has_value());
}

TEST_CASE("canonical echo reparses to the same document") {
    const RunConfig cfg = parse_run_config(kSweep, RunKind::Sweep);
    const RunConfig again = parse_run_config(cfg.canonical_json, RunKind::Sweep);
    CHECK(again.canonical_json == cfg.canonical_json);
    CHECK(again.model->bare.gamma == cfg.model->bare.gamma);
}

TEST_CASE("grid-info config wants only the model block") {
    const char* text = R"({
        "model": {"L": 100, "lambda_ir": 0, "lambda_uv": 62.83, "omega_0": 31.4, "gamma": 3.14}})";
    const RunConfig cfg = parse_run_config(text, RunKind::GridInfo);
    REQUIRE(cfg.model.has_value());
    CHECK_THROWS_AS(parse_run_config(kScatter, RunKind::GridInfo), std::invalid_argument);
}
