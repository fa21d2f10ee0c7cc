// run_config.hpp — Schema-validated JSON run configuration for the CLI
//
// A run config is a JSON object whose blocks depend on the experiment:
//   scatter:   model, packet, time
//   sweep:     model, packet, time, sweep
//   decay:     model, time, fit (optional)
//   converge:  physical, converge
//   grid-info: model
// Unknown keys are rejected at every level before any computation starts.

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "wqed/experiments.hpp"
#include "wqed/model.hpp"
#include "wqed/propagator.hpp"
#include "wqed/state.hpp"

namespace wqed {

enum class RunKind { Scatter, Sweep, Decay, Converge, GridInfo };
const char* run_kind_name(RunKind kind);

struct SweepBlock {
    SweepVariable variable{SweepVariable::OmegaP};
    std::vector<double> values;
};

struct ConvergeBlock {
    std::vector<double> half_widths;
    std::vector<double> omega_p;
    std::vector<std::size_t> n_steps_list;
    ConvergenceSettings settings;
};

struct RunConfig {
    RunKind kind{RunKind::Scatter};
    std::optional<SimulationConfig> model;
    std::optional<WavepacketSpec> packet;
    std::optional<TimeGrid> time;
    std::optional<SweepBlock> sweep;
    std::optional<FitWindow> fit;
    std::optional<PhysicalParams> physical;
    std::optional<ConvergeBlock> converge;
    std::string canonical_json;  // normalized echo of the validated document
};

// Throws std::invalid_argument on schema violations (missing blocks, unknown
// keys, non-finite numbers) and std::runtime_error when the file is unreadable.
RunConfig load_run_config(const std::filesystem::path& path, RunKind kind);
RunConfig parse_run_config(const std::string& text, RunKind kind);

}  // namespace wqed
