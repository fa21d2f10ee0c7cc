#include "wqed/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include "wqed/renorm.hpp"

namespace wqed {

namespace {

// Index-based work pool: each task owns its slot, results land by index.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    unsigned n_workers = threads == 0 ? std::thread::hardware_concurrency() : threads;
    n_workers = std::max(1u, std::min<unsigned>(n_workers, static_cast<unsigned>(count)));
    if (n_workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                body(i);
            }
        });
    }
    for (auto& worker : pool) worker.join();
}

struct LinearFit {
    double slope{0.0};
    double intercept{0.0};
    double rms_residual{0.0};
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= n;
    mean_y /= n;
    double cov = 0.0, var = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        cov += (x[i] - mean_x) * (y[i] - mean_y);
        var += (x[i] - mean_x) * (x[i] - mean_x);
    }
    LinearFit fit;
    fit.slope = cov / var;
    fit.intercept = mean_y - fit.slope * mean_x;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = y[i] - (fit.slope * x[i] + fit.intercept);
        ss += d * d;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

SweepRow evaluate_sweep_row(const SweepSpec& spec, double value,
                            const PropagationOptions& options) {
    SweepRow row;
    row.value = value;
    try {
        SimulationConfig config = spec.base_config;
        WavepacketSpec packet = spec.packet;
        TimeGrid time_grid = spec.time_grid;
        switch (spec.variable) {
            case SweepVariable::OmegaP:
                packet.k_p = value;
                break;
            case SweepVariable::LambdaUv:
                config.window.lambda_uv = value;
                break;
            case SweepVariable::NSteps:
                time_grid.n_steps = static_cast<std::size_t>(std::llround(value));
                break;
            case SweepVariable::HalfWidth:
                config.window = {config.bare.omega0 - value, config.bare.omega0 + value};
                break;
        }
        config.validate();

        const MomentumGrid grid = build_grid(config);
        const SingleExcitationState initial = init_gaussian(grid, packet);
        const RenormReport renorm = renormalize(config.bare, config.window);
        row.omega_a = renorm.physical.omega_a;
        row.decay_rate = renorm.physical.decay_rate;
        row.r_th_bare = predicted_reflection(initial, grid, coefficient_fn(config.bare));
        row.r_phys = predicted_reflection(initial, grid, coefficient_fn(renorm.physical));

        const ScatteringRecord record = run_scattering(config, packet, time_grid, options);
        row.r_sim = record.final_reflection;
        row.t_sim = record.final_transmission;
        row.a_final = record.final_atom;
        row.ok = true;
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

const char* bool_str(bool v) { return v ? "true" : "false"; }

}  // namespace

GridReport grid_report(const SimulationConfig& config) {
    const MomentumGrid grid = build_grid(config);
    GridReport report;
    report.modes = grid.size();
    report.n_min = grid.n_indices.front();
    report.n_max = grid.n_indices.back();
    report.spacing = 2.0 * std::numbers::pi / config.length;
    report.k_min = grid.momenta.front();
    report.k_max = grid.momenta.back();
    report.dim_formula = hilbert_dim(config, 1);
    report.dim_state = 2 * grid.size() + 1;
    return report;
}

ScatteringRecord run_scattering(const SimulationConfig& config, const WavepacketSpec& packet,
                                const TimeGrid& time_grid,
                                const PropagationOptions& options) {
    if (packet.channel != 1) {
        throw std::invalid_argument("run_scattering: packet must occupy channel 1");
    }
    config.validate();
    const MomentumGrid grid = build_grid(config);
    const SingleExcitationState initial = init_gaussian(grid, packet);

    ScatteringRecord record;
    record.trajectory = propagate(initial, time_grid, config, grid, options);
    const ExcitationProbabilities probs =
        excitation_probs(record.trajectory.final_state, grid);
    record.final_transmission = probs.transmitted;
    record.final_reflection = probs.reflected;
    record.final_atom = probs.atom;
    record.relaxation_warning = probs.atom > kRelaxationThreshold;
    return record;
}

const char* sweep_variable_name(SweepVariable variable) {
    switch (variable) {
        case SweepVariable::OmegaP: return "omega_p";
        case SweepVariable::LambdaUv: return "lambda_uv";
        case SweepVariable::NSteps: return "n_steps";
        case SweepVariable::HalfWidth: return "half_width";
    }
    return "?";
}

SweepResult sweep(const SweepSpec& spec, unsigned threads, const PropagationOptions& options) {
    if (spec.values.empty()) {
        throw std::invalid_argument("sweep: values must be non-empty");
    }
    SweepResult result;
    result.variable = spec.variable;
    result.rows.resize(spec.values.size());
    parallel_for(spec.values.size(), threads, [&](std::size_t i) {
        result.rows[i] = evaluate_sweep_row(spec, spec.values[i], options);
    });
    return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
    out << sweep_variable_name(result.variable) << ",R_sim,R_th_bare,R_phys\n";
    char buf[192];
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& row : result.rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", row.value,
                      row.ok ? row.r_sim : nan, row.ok ? row.r_th_bare : nan,
                      row.ok ? row.r_phys : nan);
        out << buf;
    }
}

DecayFit decay_experiment(const SimulationConfig& config, const TimeGrid& time_grid,
                          std::optional<FitWindow> window, Trajectory* trajectory_out) {
    config.validate();
    time_grid.validate();
    const double horizon = std::min(time_grid.total_time, config.length / 2.0);
    FitWindow fit_window =
        window.value_or(FitWindow{0.1 * time_grid.total_time, 0.8 * horizon});
    if (!(fit_window.t_start > 0.0) || !(fit_window.t_end > fit_window.t_start)) {
        throw std::invalid_argument("decay_experiment: fit window must satisfy 0 < t_start < t_end");
    }
    if (fit_window.t_end > horizon) {
        throw std::invalid_argument(
            "decay_experiment: fit window must end before min(T, L/2) (finite-size revival)");
    }
    const double transient = 5.0 / config.window.bandwidth();
    if (fit_window.t_start < transient) {
        throw std::invalid_argument(
            "decay_experiment: t_start must skip the transient (>= 5/bandwidth)");
    }

    const MomentumGrid grid = build_grid(config);
    const Trajectory trajectory =
        propagate(atom_excited_state(grid), time_grid, config, grid, {});

    std::vector<double> times, log_amp, phase;
    for (const auto& rec : trajectory.records) {
        if (rec.t < fit_window.t_start || rec.t > fit_window.t_end) continue;
        const double amp = std::abs(rec.atom_amplitude);
        if (!(amp > 0.0)) {
            throw std::runtime_error("decay_experiment: atomic amplitude vanished in window");
        }
        // Schrodinger picture: b_S(t) = e^{-i omega0 t} b_I(t)
        const auto b_s = std::polar(1.0, -config.bare.omega0 * rec.t) * rec.atom_amplitude;
        times.push_back(rec.t);
        log_amp.push_back(std::log(amp));
        phase.push_back(std::arg(b_s));
    }
    if (times.size() < 8) {
        throw std::invalid_argument("decay_experiment: fit window too short");
    }

    // Unwrap the phase before fitting; sampling is dense enough that
    // successive samples differ by far less than pi.
    for (std::size_t i = 1; i < phase.size(); ++i) {
        double d = phase[i] - phase[i - 1];
        while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
        while (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
        phase[i] = phase[i - 1] + d;
    }

    const LinearFit amp_fit = fit_line(times, log_amp);
    const LinearFit phase_fit = fit_line(times, phase);

    DecayFit fit;
    fit.decay_rate_fit = -2.0 * amp_fit.slope;
    fit.omega_a_fit = -phase_fit.slope;
    fit.window = fit_window;
    fit.residual = amp_fit.rms_residual;
    fit.residual_warning = fit.residual > kDecayResidualThreshold;
    if (trajectory_out != nullptr) *trajectory_out = trajectory;
    return fit;
}

ConvergenceStudy convergence_study(const PhysicalParams& phys,
                                   const std::vector<double>& half_widths,
                                   const std::vector<double>& omega_p_values,
                                   const std::vector<std::size_t>& n_steps_values,
                                   const ConvergenceSettings& settings, unsigned threads) {
    phys.validate();
    if (half_widths.empty() || omega_p_values.empty() || n_steps_values.empty()) {
        throw std::invalid_argument("convergence_study: all value lists must be non-empty");
    }
    for (double lambda : half_widths) {
        for (double omega_p : omega_p_values) {
            if (std::abs(omega_p - phys.omega_a) >= lambda) {
                throw std::invalid_argument(
                    "convergence_study: every omega_p must lie inside every window");
            }
        }
    }

    std::vector<std::size_t> sorted_steps = n_steps_values;
    std::sort(sorted_steps.begin(), sorted_steps.end());

    ConvergenceStudy study;
    study.cells.resize(half_widths.size() * omega_p_values.size() * sorted_steps.size());
    const std::size_t per_lambda = omega_p_values.size() * sorted_steps.size();

    parallel_for(study.cells.size(), threads, [&](std::size_t idx) {
        const std::size_t li = idx / per_lambda;
        const std::size_t pi_ = (idx % per_lambda) / sorted_steps.size();
        const std::size_t si = idx % sorted_steps.size();

        ConvergenceCell& cell = study.cells[idx];
        cell.half_width = half_widths[li];
        cell.omega_p = omega_p_values[pi_];
        cell.n_steps = sorted_steps[si];
        try {
            const InverseParameterization inv = bare_from_physical(phys, cell.half_width);
            SimulationConfig config;
            config.length = settings.length;
            config.window = inv.window;
            config.bare = inv.bare;

            WavepacketSpec packet{cell.omega_p, settings.delta_k, settings.x_0, 1};
            const MomentumGrid grid = build_grid(config);
            cell.r_phys =
                predicted_reflection(init_gaussian(grid, packet), grid, coefficient_fn(phys));

            const ScatteringRecord record = run_scattering(
                config, packet, TimeGrid{settings.total_time, cell.n_steps}, {false, 1});
            cell.r_sim = record.final_reflection;
            const double total =
                record.final_reflection + record.final_transmission + record.final_atom;
            if (std::abs(total - 1.0) > 0.5) {
                // unstable step size: the norm ran away without overflowing
                cell.diverged = true;
                cell.error = "norm blow-up (step size beyond the stability limit)";
            } else {
                cell.within_band =
                    std::abs(cell.r_sim - cell.r_phys) / cell.r_phys <= settings.band;
            }
        } catch (const PropagationError& e) {
            cell.diverged = true;
            cell.error = e.what();
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
    });

    // Smallest step count from which every omega_p row stays inside the band.
    for (std::size_t li = 0; li < half_widths.size(); ++li) {
        MinimalSteps minimal;
        minimal.half_width = half_widths[li];
        for (std::size_t si_start = 0; si_start < sorted_steps.size(); ++si_start) {
            bool all_in = true;
            for (std::size_t si = si_start; si < sorted_steps.size() && all_in; ++si) {
                for (std::size_t pi_ = 0; pi_ < omega_p_values.size(); ++pi_) {
                    const auto& cell =
                        study.cells[li * per_lambda + pi_ * sorted_steps.size() + si];
                    if (!cell.within_band || cell.diverged || !cell.error.empty()) {
                        all_in = false;
                        break;
                    }
                }
            }
            if (all_in) {
                minimal.converged = true;
                minimal.n_steps = sorted_steps[si_start];
                break;
            }
        }
        study.minimal_steps.push_back(minimal);
    }
    return study;
}

void write_convergence_csv(const ConvergenceStudy& study, std::ostream& out) {
    out << "half_width,omega_p,n_steps,R_sim,R_phys,within_band,diverged\n";
    char buf[256];
    for (const auto& cell : study.cells) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%zu,%.17g,%.17g,%s,%s\n",
                      cell.half_width, cell.omega_p, cell.n_steps, cell.r_sim, cell.r_phys,
                      bool_str(cell.within_band), bool_str(cell.diverged));
        out << buf;
    }
}

}  // namespace wqed
