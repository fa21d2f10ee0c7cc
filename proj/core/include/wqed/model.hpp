// model.hpp — Simulation parameters, cutoff-restricted momentum grid, Hilbert dimensions
//
// Conventions used throughout the library: hbar = 1, group velocity v_g = 1,
// linear dispersion omega_k = k. All frequencies, momenta and rates are plain
// doubles in these natural units; there is no unit-conversion layer.

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wqed {

// No integer mode index falls inside the frequency window.
struct EmptyGridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Hard frequency cutoffs restricting the retained photon modes to
// [lambda_ir, lambda_uv].
struct FrequencyWindow {
    double lambda_ir{0.0};
    double lambda_uv{0.0};

    double bandwidth() const { return lambda_uv - lambda_ir; }
    bool strictly_contains(double omega) const {
        return lambda_ir < omega && omega < lambda_uv;
    }
    // Throws std::invalid_argument unless 0 <= lambda_ir < lambda_uv.
    void validate() const;
};

// Model-level two-level-system parameters entering the Hamiltonian.
// These are not directly observable; see renorm.hpp for the map to
// PhysicalParams. gamma = 0 is the uncoupled limit (free propagation);
// renormalization operations require gamma > 0.
struct BareParams {
    double omega0{0.0};  // bare transition frequency
    double gamma{0.0};   // bare decay rate
    void validate() const;
};

// Observable (renormalized) counterpart of BareParams.
struct PhysicalParams {
    double omega_a{0.0};     // physical transition frequency
    double decay_rate{0.0};  // physical decay rate
    void validate() const;
};

// Single source of truth for one simulation run.
struct SimulationConfig {
    double length{0.0};  // waveguide length L, periodic boundary conditions
    FrequencyWindow window;
    BareParams bare;

    // Throws std::invalid_argument if any invariant is broken: L > 0,
    // window valid, bare valid, omega0 strictly inside the window.
    void validate() const;

    // JSON object with keys "L", "lambda_ir", "lambda_uv", "omega_0", "gamma".
    static SimulationConfig from_json(const std::string& text);
    std::string to_json() const;
};

// Quantized momenta k = n * 2*pi/L with lambda_ir <= k <= lambda_uv
// (inclusive bounds), shared by both propagation channels.
struct MomentumGrid {
    std::vector<double> momenta;  // strictly increasing, uniform spacing 2*pi/L
    std::vector<long> n_indices;  // k = n_indices[i] * spacing

    std::size_t size() const { return momenta.size(); }
    double spacing() const;  // 2*pi/L, from adjacent indices
};

// All k = n*2*pi/L with ceil(lambda_ir*L/2pi) <= n <= floor(lambda_uv*L/2pi).
// Bounds that land within a 1e-9 relative gap of an integer are treated as
// exact so that cutoffs parameterized as exact multiples of the mode spacing
// keep their edge modes. Throws EmptyGridError when no integer n qualifies.
MomentumGrid build_grid(double length, const FrequencyWindow& window);
MomentumGrid build_grid(const SimulationConfig& config);

// Dimension formula (2*floor(L/2pi*(lambda_uv-lambda_ir)))^N + 1 as printed;
// counts bandwidth by floor, which may undercount the inclusive-endpoint mode
// set by up to one mode per channel. Validates that the grid is non-empty.
std::uint64_t hilbert_dim(const SimulationConfig& config, unsigned n_excitations);

// Exact length of the N = 1 state vector actually propagated: 2*|grid| + 1.
std::size_t state_size(const SimulationConfig& config);

}  // namespace wqed
