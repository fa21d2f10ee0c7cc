// wqed — command-line front end: renormalization calculator plus the scattering,
// sweep, decay and convergence experiments. Thin dispatcher: all physics lives
// in the library; this file only parses inputs and writes artifacts.
//
// Exit codes: 0 ok, 1 input error, 2 invalid renormalization region,
// 3 numerical abort.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wqed/experiments.hpp"
#include "wqed/renorm.hpp"
#include "wqed/run_config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInvalidRegion = 2;
constexpr int kExitNumericalAbort = 3;

struct OutputDir {
    fs::path path;

    // Fails up front so no partial artifacts are ever produced.
    static OutputDir prepare(const std::string& raw) {
        OutputDir out{fs::path(raw)};
        std::error_code ec;
        fs::create_directories(out.path, ec);
        if (ec) {
            throw std::runtime_error("cannot create output directory " + out.path.string() +
                                     ": " + ec.message());
        }
        const fs::path probe = out.path / ".wqed-write-probe";
        {
            std::ofstream test(probe);
            if (!test) {
                throw std::runtime_error("output directory " + out.path.string() +
                                         " is not writable");
            }
        }
        fs::remove(probe, ec);
        return out;
    }

    void write_text(const std::string& name, const std::string& text) const {
        const fs::path file = path / name;
        std::ofstream stream(file);
        if (!stream) {
            throw std::runtime_error("cannot open " + file.string() + " for writing");
        }
        stream << text;
        if (!stream) {
            throw std::runtime_error("failed writing " + file.string());
        }
    }

    template <typename Writer>
    void write_with(const std::string& name, Writer&& writer) const {
        const fs::path file = path / name;
        std::ofstream stream(file);
        if (!stream) {
            throw std::runtime_error("cannot open " + file.string() + " for writing");
        }
        writer(stream);
        if (!stream) {
            throw std::runtime_error("failed writing " + file.string());
        }
    }
};

json renorm_json(const wqed::RenormReport& report) {
    return json{{"omega_A", report.physical.omega_a},
                {"Gamma", report.physical.decay_rate},
                {"f", report.f_factor},
                {"H", report.harmonic_mean},
                {"valid", report.valid}};
}

void print_renorm_table(const wqed::BareParams& bare, const wqed::FrequencyWindow& window,
                        const wqed::RenormReport& report) {
    char buf[256];
    std::printf("omega_0,gamma,lambda_ir,lambda_uv,omega_A,Gamma,f,H,valid\n");
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%s\n",
                  bare.omega0, bare.gamma, window.lambda_ir, window.lambda_uv,
                  report.physical.omega_a, report.physical.decay_rate, report.f_factor,
                  report.harmonic_mean, report.valid ? "true" : "false");
    std::printf("%s", buf);
}

int write_abort_summary(const OutputDir& out, const char* experiment,
                        const std::string& config_echo, const wqed::PropagationError& abort) {
    json summary;
    summary["experiment"] = experiment;
    summary["config"] = json::parse(config_echo);
    summary["error"] = {{"type", "numerical-abort"},
                        {"step", abort.step},
                        {"norm", std::isfinite(abort.norm) ? json(abort.norm) : json()}};
    out.write_text("summary.json", summary.dump(2) + "\n");
    std::cerr << "wqed: " << abort.what() << "\n";
    return kExitNumericalAbort;
}

int cmd_renorm(const std::optional<double>& omega0, const std::optional<double>& gamma,
               const std::optional<double>& lambda_ir, const std::optional<double>& lambda_uv,
               const std::optional<double>& omega_a, const std::optional<double>& gamma_phys,
               const std::optional<double>& half_width) {
    const bool inverse = omega_a.has_value() || gamma_phys.has_value() || half_width.has_value();
    if (inverse) {
        if (!omega_a || !gamma_phys || !half_width) {
            std::cerr << "wqed renorm: inverse mode needs --omega-a, --gamma-phys and "
                         "--half-width\n";
            return kExitInput;
        }
        if (omega0 || gamma || lambda_ir || lambda_uv) {
            std::cerr << "wqed renorm: cannot mix forward and inverse flags\n";
            return kExitInput;
        }
        const auto inv =
            wqed::bare_from_physical({*omega_a, *gamma_phys}, *half_width);
        print_renorm_table(inv.bare, inv.window, wqed::renormalize(inv.bare, inv.window));
        return kExitOk;
    }
    if (!omega0 || !gamma || !lambda_ir || !lambda_uv) {
        std::cerr << "wqed renorm: forward mode needs --omega0, --gamma, --lambda-ir and "
                     "--lambda-uv\n";
        return kExitInput;
    }
    const wqed::BareParams bare{*omega0, *gamma};
    const wqed::FrequencyWindow window{*lambda_ir, *lambda_uv};
    print_renorm_table(bare, window, wqed::renormalize(bare, window));
    return kExitOk;
}

int cmd_grid_info(const std::string& config_path) {
    const auto cfg = wqed::load_run_config(config_path, wqed::RunKind::GridInfo);
    const auto report = wqed::grid_report(*cfg.model);
    std::printf("modes,n_min,n_max,spacing,k_min,k_max,dim_formula,dim_state\n");
    std::printf("%zu,%ld,%ld,%.12g,%.12g,%.12g,%llu,%zu\n", report.modes, report.n_min,
                report.n_max, report.spacing, report.k_min, report.k_max,
                static_cast<unsigned long long>(report.dim_formula), report.dim_state);
    return kExitOk;
}

int cmd_scatter(const std::string& config_path, const std::string& out_dir, unsigned threads,
                std::size_t record_every) {
    (void)threads;
    const auto cfg = wqed::load_run_config(config_path, wqed::RunKind::Scatter);
    const auto out = OutputDir::prepare(out_dir);
    const auto renorm = wqed::renormalize(cfg.model->bare, cfg.model->window);

    wqed::PropagationOptions options;
    options.record_every = record_every;
    try {
        const auto record = wqed::run_scattering(*cfg.model, *cfg.packet, *cfg.time, options);
        out.write_with("trajectory.csv",
                       [&](std::ostream& s) { wqed::write_trajectory_csv(record.trajectory, s); });
        json summary;
        summary["experiment"] = "scatter";
        summary["config"] = json::parse(cfg.canonical_json);
        summary["renormalization"] = renorm_json(renorm);
        summary["results"] = {{"final_R", record.final_reflection},
                              {"final_T", record.final_transmission},
                              {"final_A", record.final_atom},
                              {"relaxation_warning", record.relaxation_warning}};
        out.write_text("summary.json", summary.dump(2) + "\n");
        if (record.relaxation_warning) {
            std::cerr << "wqed scatter: warning: atom not relaxed at final time (A = "
                      << record.final_atom << ")\n";
        }
        return kExitOk;
    } catch (const wqed::PropagationError& abort) {
        return write_abort_summary(out, "scatter", cfg.canonical_json, abort);
    }
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir, unsigned threads,
              std::size_t record_every) {
    const auto cfg = wqed::load_run_config(config_path, wqed::RunKind::Sweep);
    const auto out = OutputDir::prepare(out_dir);
    const auto renorm = wqed::renormalize(cfg.model->bare, cfg.model->window);

    wqed::SweepSpec spec;
    spec.variable = cfg.sweep->variable;
    spec.values = cfg.sweep->values;
    spec.base_config = *cfg.model;
    spec.packet = *cfg.packet;
    spec.time_grid = *cfg.time;

    wqed::PropagationOptions options;
    options.record_observables = false;
    options.record_every = record_every;
    const auto result = wqed::sweep(spec, threads, options);

    out.write_with("sweep.csv",
                   [&](std::ostream& s) { wqed::write_sweep_csv(result, s); });
    json rows = json::array();
    std::size_t failed = 0;
    for (const auto& row : result.rows) {
        json entry{{"value", row.value}, {"ok", row.ok}};
        if (row.ok) {
            entry["R_sim"] = row.r_sim;
            entry["R_th_bare"] = row.r_th_bare;
            entry["R_phys"] = row.r_phys;
            entry["omega_A"] = row.omega_a;
            entry["Gamma"] = row.decay_rate;
        } else {
            entry["error"] = row.error;
            ++failed;
        }
        rows.push_back(entry);
    }
    json summary;
    summary["experiment"] = "sweep";
    summary["config"] = json::parse(cfg.canonical_json);
    summary["renormalization"] = renorm_json(renorm);
    summary["results"] = {{"variable", wqed::sweep_variable_name(result.variable)},
                          {"rows", rows},
                          {"failed_rows", failed}};
    out.write_text("summary.json", summary.dump(2) + "\n");
    return kExitOk;
}

int cmd_decay(const std::string& config_path, const std::string& out_dir) {
    const auto cfg = wqed::load_run_config(config_path, wqed::RunKind::Decay);
    const auto out = OutputDir::prepare(out_dir);
    const auto renorm = wqed::renormalize(cfg.model->bare, cfg.model->window);

    try {
        wqed::Trajectory trajectory;
        const auto fit = wqed::decay_experiment(*cfg.model, *cfg.time, cfg.fit, &trajectory);
        out.write_with("trajectory.csv",
                       [&](std::ostream& s) { wqed::write_trajectory_csv(trajectory, s); });
        json summary;
        summary["experiment"] = "decay";
        summary["config"] = json::parse(cfg.canonical_json);
        summary["renormalization"] = renorm_json(renorm);
        summary["results"] = {{"omega_A_fit", fit.omega_a_fit},
                              {"Gamma_fit", fit.decay_rate_fit},
                              {"fit_t_start", fit.window.t_start},
                              {"fit_t_end", fit.window.t_end},
                              {"residual", fit.residual},
                              {"residual_warning", fit.residual_warning}};
        out.write_text("summary.json", summary.dump(2) + "\n");
        return kExitOk;
    } catch (const wqed::PropagationError& abort) {
        return write_abort_summary(out, "decay", cfg.canonical_json, abort);
    }
}

int cmd_converge(const std::string& config_path, const std::string& out_dir, unsigned threads) {
    const auto cfg = wqed::load_run_config(config_path, wqed::RunKind::Converge);
    const auto out = OutputDir::prepare(out_dir);
    const auto& block = *cfg.converge;

    const auto study = wqed::convergence_study(*cfg.physical, block.half_widths, block.omega_p,
                                               block.n_steps_list, block.settings, threads);
    out.write_with("converge.csv",
                   [&](std::ostream& s) { wqed::write_convergence_csv(study, s); });

    json minimal = json::array();
    for (const auto& entry : study.minimal_steps) {
        json bare_gamma;
        try {
            bare_gamma = wqed::bare_from_physical(*cfg.physical, entry.half_width).bare.gamma;
        } catch (const std::exception&) {
            bare_gamma = json();
        }
        minimal.push_back({{"half_width", entry.half_width},
                           {"converged", entry.converged},
                           {"min_n_steps", entry.n_steps},
                           {"bare_gamma", bare_gamma}});
    }
    json summary;
    summary["experiment"] = "converge";
    summary["config"] = json::parse(cfg.canonical_json);
    summary["renormalization"] = {{"omega_A", cfg.physical->omega_a},
                                  {"Gamma", cfg.physical->decay_rate}};
    summary["results"] = {{"minimal_steps", minimal}};
    out.write_text("summary.json", summary.dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"waveguide-QED single-photon simulator with renormalization-aware "
                 "parameterization"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    unsigned threads = 0;  // 0 = hardware concurrency
    std::size_t record_every = 1;

    // renorm
    auto* renorm_cmd = app.add_subcommand("renorm", "bare <-> physical parameter map");
    std::optional<double> omega0, gamma, lambda_ir, lambda_uv, omega_a, gamma_phys, half_width;
    renorm_cmd->add_option("--omega0", omega0, "bare transition frequency");
    renorm_cmd->add_option("--gamma", gamma, "bare decay rate");
    renorm_cmd->add_option("--lambda-ir", lambda_ir, "IR cutoff");
    renorm_cmd->add_option("--lambda-uv", lambda_uv, "UV cutoff");
    renorm_cmd->add_option("--omega-a", omega_a, "physical frequency (inverse mode)");
    renorm_cmd->add_option("--gamma-phys", gamma_phys, "physical decay rate (inverse mode)");
    renorm_cmd->add_option("--half-width", half_width, "window half-width (inverse mode)");

    auto add_io = [&](CLI::App* cmd, bool with_out) {
        cmd->add_option("--config", config_path, "JSON run configuration")->required();
        if (with_out) cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
        cmd->add_option("--record-every", record_every, "observable recording cadence")
            ->check(CLI::PositiveNumber);
    };

    auto* scatter_cmd = app.add_subcommand("scatter", "single wavepacket scattering run");
    add_io(scatter_cmd, true);
    auto* sweep_cmd = app.add_subcommand("sweep", "scattering parameter sweep");
    add_io(sweep_cmd, true);
    auto* decay_cmd = app.add_subcommand("decay", "atomic decay fit");
    add_io(decay_cmd, true);
    auto* converge_cmd = app.add_subcommand("converge", "step-count convergence study");
    add_io(converge_cmd, true);
    auto* grid_cmd = app.add_subcommand("grid-info", "momentum grid and dimensions");
    grid_cmd->add_option("--config", config_path, "JSON run configuration (model block)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (renorm_cmd->parsed()) {
            return cmd_renorm(omega0, gamma, lambda_ir, lambda_uv, omega_a, gamma_phys,
                              half_width);
        }
        if (scatter_cmd->parsed()) {
            return cmd_scatter(config_path, out_dir, threads, record_every);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(config_path, out_dir, threads, record_every);
        }
        if (decay_cmd->parsed()) {
            return cmd_decay(config_path, out_dir);
        }
        if (converge_cmd->parsed()) {
            return cmd_converge(config_path, out_dir, threads);
        }
        if (grid_cmd->parsed()) {
            return cmd_grid_info(config_path);
        }
        return kExitInput;
    } catch (const wqed::InvalidRenormRegion& e) {
        std::cerr << "wqed: " << e.what() << "\n";
        return kExitInvalidRegion;
    } catch (const std::exception& e) {
        std::cerr << "wqed: " << e.what() << "\n";
        return kExitInput;
    }
}
