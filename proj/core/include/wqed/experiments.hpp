// experiments.hpp — Named, configurable reproductions of the numerical experiments:
// scattering runs, parameter sweeps, atomic-decay fits, step-count convergence
// studies. Sweep rows and convergence cells are independent and can run on a
// work pool; results are collected by index so output ordering is
// deterministic regardless of completion order.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wqed/model.hpp"
#include "wqed/observables.hpp"
#include "wqed/propagator.hpp"
#include "wqed/state.hpp"

namespace wqed {

struct GridReport {
    std::size_t modes{0};
    long n_min{0};
    long n_max{0};
    double spacing{0.0};
    double k_min{0.0};
    double k_max{0.0};
    std::uint64_t dim_formula{0};  // printed dimension formula, N = 1
    std::size_t dim_state{0};      // 2*modes + 1
};

GridReport grid_report(const SimulationConfig& config);

// Final atomic population above this value means the run ended before the
// atom relaxed; the record is flagged, not rejected.
inline constexpr double kRelaxationThreshold = 1e-3;

// Build grid, prepare the packet (channel 1 required), propagate, read off
// the final excitation distribution.
ScatteringRecord run_scattering(const SimulationConfig& config, const WavepacketSpec& packet,
                                const TimeGrid& time_grid,
                                const PropagationOptions& options = {});

// ---------------------------------------------------------------------------
// Parameter sweeps
// ---------------------------------------------------------------------------

enum class SweepVariable { OmegaP, LambdaUv, NSteps, HalfWidth };
const char* sweep_variable_name(SweepVariable variable);

struct SweepSpec {
    SweepVariable variable{SweepVariable::OmegaP};
    std::vector<double> values;  // non-empty
    SimulationConfig base_config;
    WavepacketSpec packet;
    TimeGrid time_grid;
};

struct SweepRow {
    double value{0.0};
    bool ok{false};
    std::string error;  // per-row failure; the sweep continues past it
    double r_sim{0.0};
    double t_sim{0.0};
    double a_final{0.0};
    double r_th_bare{0.0};  // prediction from the bare coefficients
    double r_phys{0.0};     // prediction from the renormalized coefficients
    double omega_a{0.0};    // resolved physical parameters for this row
    double decay_rate{0.0};
};

struct SweepResult {
    SweepVariable variable{SweepVariable::OmegaP};
    std::vector<SweepRow> rows;
};

// threads == 0 picks the hardware concurrency; rows never share mutable state.
SweepResult sweep(const SweepSpec& spec, unsigned threads = 1,
                  const PropagationOptions& options = {});

// Columns: <variable>,R_sim,R_th_bare,R_phys (nan entries for failed rows).
void write_sweep_csv(const SweepResult& result, std::ostream& out);

// ---------------------------------------------------------------------------
// Atomic decay
// ---------------------------------------------------------------------------

struct FitWindow {
    double t_start{0.0};
    double t_end{0.0};
};

// Least-squares fit of ln|b(t)| (slope -Gamma/2) and of the unwrapped
// Schrodinger-picture phase of b (slope -omega_A) from an initially excited
// atom. residual is the RMS deviation of ln|b| from the fitted line.
struct DecayFit {
    double omega_a_fit{0.0};
    double decay_rate_fit{0.0};
    FitWindow window;
    double residual{0.0};
    bool residual_warning{false};  // residual above kDecayResidualThreshold
};

inline constexpr double kDecayResidualThreshold = 1e-2;

// Default fit window [0.1*T, 0.8*min(T, L/2)]: skips the non-Markovian
// transient and stays clear of the finite-L revival. Both endpoints
// configurable through `window`. The fit must end before min(T, L/2) and
// start after the transient time 5/bandwidth. When `trajectory_out` is
// non-null the full recorded trajectory is handed back for export.
DecayFit decay_experiment(const SimulationConfig& config, const TimeGrid& time_grid,
                          std::optional<FitWindow> window = std::nullopt,
                          Trajectory* trajectory_out = nullptr);

// ---------------------------------------------------------------------------
// Step-count convergence under the inverse parameterization
// ---------------------------------------------------------------------------

struct ConvergenceSettings {
    double length{100.0};
    double total_time{50.0};
    double delta_k{0.15707963267948966};  // 0.05*pi
    double x_0{-25.0};
    double band{0.05};  // relative acceptance band around R_phys
};

struct ConvergenceCell {
    double half_width{0.0};
    double omega_p{0.0};
    std::size_t n_steps{0};
    double r_sim{0.0};
    double r_phys{0.0};
    bool within_band{false};
    bool diverged{false};
    std::string error;
};

struct MinimalSteps {
    double half_width{0.0};
    std::size_t n_steps{0};  // 0 when the cell row never converged
    bool converged{false};
};

struct ConvergenceStudy {
    std::vector<ConvergenceCell> cells;
    std::vector<MinimalSteps> minimal_steps;  // one entry per half-width
};

// For each (half_width, omega_p, n_steps): parameterize bare values via
// bare_from_physical, run the scattering experiment, compare R against the
// physical-coefficient prediction. minimal_steps[i] is the smallest step
// count from which every omega_p stays inside the band. A diverging run
// (explicit-integrator instability) is reported per cell, never returned as
// a silent number.
ConvergenceStudy convergence_study(const PhysicalParams& phys,
                                   const std::vector<double>& half_widths,
                                   const std::vector<double>& omega_p_values,
                                   const std::vector<std::size_t>& n_steps_values,
                                   const ConvergenceSettings& settings = {},
                                   unsigned threads = 1);

// Columns: half_width,omega_p,n_steps,R_sim,R_phys,within_band,diverged
void write_convergence_csv(const ConvergenceStudy& study, std::ostream& out);

}  // namespace wqed
