// propagator.hpp — Interaction-picture RK4 time evolution with O(dim) updates
//
// The propagated equation is i d/dt |psi> = V_I(t) |psi> with
//   V_I(t)|alpha k, g> = +i sqrt(gamma/2L) e^{-i(omega_k - omega0) t} |0, e>,
//   V_I(t)|0, e>       = -i sqrt(gamma/2L) sum_{alpha k} e^{+i(omega_k - omega0) t} |alpha k, g>.
// Phases are evaluated per stage directly from (k, t); nothing is accumulated
// across steps, so long runs do not drift in phase.

#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "wqed/model.hpp"
#include "wqed/state.hpp"

namespace wqed {

struct TimeGrid {
    double total_time{0.0};
    std::size_t n_steps{0};

    double dt() const {
        if (n_steps == 0) {
            throw std::logic_error("TimeGrid: dt undefined for n_steps == 0");
        }
        return total_time / static_cast<double>(n_steps);
    }
    void validate() const;
};

// Stage-4 increment weight of the RK4 scheme. Classical fourth order feeds
// the full third increment into the last stage; PrintedHalfStage feeds half
// of it, which drops the order and is kept only as an A/B compatibility
// switch.
enum class Rk4Variant { Classical, PrintedHalfStage };

struct TrajectoryRecord {
    double t{0.0};
    double transmitted{0.0};      // sum_k |c_{1k}|^2
    double reflected{0.0};        // sum_k |c_{2k}|^2
    double atom_population{0.0};  // |b|^2
    double norm{0.0};
    std::complex<double> atom_amplitude{0.0, 0.0};  // interaction-picture b
};

struct Trajectory {
    std::vector<TrajectoryRecord> records;  // cadence per PropagationOptions
    SingleExcitationState final_state;
    double final_time{0.0};
};

// Raised when a propagated amplitude stops being finite.
struct PropagationError : std::runtime_error {
    PropagationError(std::size_t step_index, double norm_value);
    std::size_t step{0};
    double norm{0.0};
};

struct PropagationOptions {
    bool record_observables{true};
    std::size_t record_every{1};  // keep every m-th step (step 0 and the final step always)
    Rk4Variant variant{Rk4Variant::Classical};
};

// V_I(t)|state>, cost O(dim).
SingleExcitationState apply_interaction(const SingleExcitationState& state, double t,
                                        const SimulationConfig& config,
                                        const MomentumGrid& grid);

// One RK4 update from time t with step dt (dt != 0; negative dt steps
// backwards, used for time-reversal checks).
SingleExcitationState rk4_step(const SingleExcitationState& state, double t, double dt,
                               const SimulationConfig& config, const MomentumGrid& grid,
                               Rk4Variant variant = Rk4Variant::Classical);

// n_steps RK4 updates from t = 0; total cost O(n_steps * dim). Records the
// excitation distribution at the requested cadence. Throws PropagationError
// as soon as any amplitude turns non-finite.
Trajectory propagate(const SingleExcitationState& initial, const TimeGrid& time_grid,
                     const SimulationConfig& config, const MomentumGrid& grid,
                     const PropagationOptions& options = {});

// Columns: t,T_n,R_n,A_n,norm
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);

}  // namespace wqed
