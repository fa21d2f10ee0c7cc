#include "wqed/propagator.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace wqed {

namespace {

using cplx = std::complex<double>;

// Stage buffers reused across a whole propagation so the per-step cost is a
// handful of streaming passes over 2*M + 1 amplitudes.
struct Stepper {
    double coupling{0.0};        // sqrt(gamma / (2L))
    std::vector<double> detune;  // omega_k - omega0, one entry per mode
    std::vector<cplx> phase;     // e^{+i detune * t} for the current stage time
    SingleExcitationState input;
    SingleExcitationState k1, k2, k3, k4;

    Stepper(const SimulationConfig& config, const MomentumGrid& grid)
        : coupling(std::sqrt(config.bare.gamma / (2.0 * config.length))),
          detune(grid.size()),
          phase(grid.size()),
          input(grid.size()),
          k1(grid.size()),
          k2(grid.size()),
          k3(grid.size()),
          k4(grid.size()) {
        for (std::size_t m = 0; m < grid.size(); ++m) {
            detune[m] = grid.momenta[m] - config.bare.omega0;
        }
    }

    void fill_phase(double t) {
        for (std::size_t m = 0; m < detune.size(); ++m) {
            phase[m] = std::polar(1.0, detune[m] * t);
        }
    }

    // out = scale * V_I(t) |x> with the phase table already filled for t and
    // the overall factor `scale` folded in (-i*dt for an RK4 stage). Both
    // channels share the same photon update value.
    void apply_v(const SingleExcitationState& x, cplx scale, SingleExcitationState& out) const {
        const std::size_t m_count = detune.size();
        const cplx photon_factor = scale * cplx{0.0, -1.0} * coupling;
        const cplx atom_factor = scale * cplx{0.0, 1.0} * coupling;
        const cplx* c1 = x.amplitudes.data();
        const cplx* c2 = x.amplitudes.data() + m_count;
        cplx* o1 = out.amplitudes.data();
        cplx* o2 = out.amplitudes.data() + m_count;
        cplx acc{0.0, 0.0};
        for (std::size_t m = 0; m < m_count; ++m) {
            const cplx value = photon_factor * phase[m] * x.atom;
            o1[m] = value;
            o2[m] = value;
            acc += std::conj(phase[m]) * (c1[m] + c2[m]);
        }
        out.atom = atom_factor * acc;
    }

    // input = y + weight * k
    void combine(const SingleExcitationState& y, double weight,
                 const SingleExcitationState& k) {
        for (std::size_t i = 0; i < y.amplitudes.size(); ++i) {
            input.amplitudes[i] = y.amplitudes[i] + weight * k.amplitudes[i];
        }
        input.atom = y.atom + weight * k.atom;
    }

    void step(SingleExcitationState& y, double t, double dt, Rk4Variant variant) {
        const cplx stage_scale = cplx{0.0, -dt};
        const double w4 = variant == Rk4Variant::Classical ? 1.0 : 0.5;

        fill_phase(t);
        apply_v(y, stage_scale, k1);
        combine(y, 0.5, k1);
        fill_phase(t + 0.5 * dt);
        apply_v(input, stage_scale, k2);
        combine(y, 0.5, k2);
        apply_v(input, stage_scale, k3);  // same stage time as k2
        combine(y, w4, k3);
        fill_phase(t + dt);
        apply_v(input, stage_scale, k4);

        constexpr double sixth = 1.0 / 6.0;
        for (std::size_t i = 0; i < y.amplitudes.size(); ++i) {
            y.amplitudes[i] += sixth * (k1.amplitudes[i] + 2.0 * k2.amplitudes[i] +
                                        2.0 * k3.amplitudes[i] + k4.amplitudes[i]);
        }
        y.atom += sixth * (k1.atom + 2.0 * k2.atom + 2.0 * k3.atom + k4.atom);
    }
};

struct Probs {
    double transmitted, reflected, atom;
    double norm_sq() const { return transmitted + reflected + atom; }
};

Probs measure(const SingleExcitationState& s) {
    const std::size_t m_count = s.modes();
    double t_sum = 0.0, r_sum = 0.0;
    for (std::size_t m = 0; m < m_count; ++m) t_sum += std::norm(s.amplitudes[m]);
    for (std::size_t m = 0; m < m_count; ++m) r_sum += std::norm(s.amplitudes[m_count + m]);
    return {t_sum, r_sum, std::norm(s.atom)};
}

TrajectoryRecord make_record(double t, const SingleExcitationState& s) {
    const Probs p = measure(s);
    return {t, p.transmitted, p.reflected, p.atom, std::sqrt(p.norm_sq()), s.atom};
}

void check_dims(const SingleExcitationState& state, const MomentumGrid& grid,
                const char* where) {
    if (state.modes() != grid.size() || state.amplitudes.size() != 2 * grid.size()) {
        throw std::invalid_argument(std::string(where) + ": state/grid dimension mismatch");
    }
}

}  // namespace

void TimeGrid::validate() const {
    if (!(total_time > 0.0) || !std::isfinite(total_time)) {
        throw std::invalid_argument("TimeGrid: total_time must be > 0");
    }
}

PropagationError::PropagationError(std::size_t step_index, double norm_value)
    : std::runtime_error("propagation aborted: non-finite amplitudes at step " +
                         std::to_string(step_index)),
      step(step_index),
      norm(norm_value) {}

SingleExcitationState apply_interaction(const SingleExcitationState& state, double t,
                                        const SimulationConfig& config,
                                        const MomentumGrid& grid) {
    check_dims(state, grid, "apply_interaction");
    Stepper stepper(config, grid);
    SingleExcitationState out(grid.size());
    stepper.fill_phase(t);
    stepper.apply_v(state, cplx{1.0, 0.0}, out);
    return out;
}

SingleExcitationState rk4_step(const SingleExcitationState& state, double t, double dt,
                               const SimulationConfig& config, const MomentumGrid& grid,
                               Rk4Variant variant) {
    check_dims(state, grid, "rk4_step");
    if (dt == 0.0 || !std::isfinite(dt)) {
        throw std::invalid_argument("rk4_step: dt must be finite and nonzero");
    }
    Stepper stepper(config, grid);
    SingleExcitationState y = state;
    stepper.step(y, t, dt, variant);
    return y;
}

Trajectory propagate(const SingleExcitationState& initial, const TimeGrid& time_grid,
                     const SimulationConfig& config, const MomentumGrid& grid,
                     const PropagationOptions& options) {
    check_dims(initial, grid, "propagate");
    time_grid.validate();
    if (options.record_every == 0) {
        throw std::invalid_argument("propagate: record_every must be >= 1");
    }

    Trajectory trajectory;
    if (options.record_observables) {
        trajectory.records.push_back(make_record(0.0, initial));
    }
    if (time_grid.n_steps == 0) {
        trajectory.final_state = initial;
        trajectory.final_time = 0.0;
        return trajectory;
    }

    const double dt = time_grid.dt();
    Stepper stepper(config, grid);
    SingleExcitationState y = initial;
    for (std::size_t n = 0; n < time_grid.n_steps; ++n) {
        stepper.step(y, static_cast<double>(n) * dt, dt, options.variant);

        const Probs p = measure(y);
        if (!std::isfinite(p.norm_sq())) {
            throw PropagationError(n + 1, std::sqrt(p.norm_sq()));
        }
        const bool last = n + 1 == time_grid.n_steps;
        if (options.record_observables && ((n + 1) % options.record_every == 0 || last)) {
            const double t_now = static_cast<double>(n + 1) * dt;
            trajectory.records.push_back(
                {t_now, p.transmitted, p.reflected, p.atom, std::sqrt(p.norm_sq()), y.atom});
        }
    }
    trajectory.final_time = time_grid.total_time;
    trajectory.final_state = std::move(y);
    return trajectory;
}

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
    out << "t,T_n,R_n,A_n,norm\n";
    char buf[192];
    for (const auto& rec : trajectory.records) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", rec.t,
                      rec.transmitted, rec.reflected, rec.atom_population, rec.norm);
        out << buf;
    }
}

}  // namespace wqed
