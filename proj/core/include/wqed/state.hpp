// state.hpp — Single-excitation quantum state and Gaussian wavepacket preparation

#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "wqed/model.hpp"

namespace wqed {

// Momentum-space wavepacket parameters for the initial photon.
struct WavepacketSpec {
    double k_p{0.0};      // central momentum (= central frequency, omega_k = k)
    double delta_k{0.0};  // momentum-space standard deviation
    double x_0{0.0};      // initial position along the waveguide
    int channel{1};       // propagation channel, 1 or 2
};

// N = 1 state: photon amplitudes over (channel, mode) plus the atomic
// amplitude. Amplitudes are stored channel-major (all channel-1 modes in
// ascending k, then all channel-2 modes) so the propagator's update is a
// pair of streaming passes. This ordering is also the CSV snapshot order.
struct SingleExcitationState {
    std::vector<std::complex<double>> amplitudes;  // size 2*M
    std::complex<double> atom{0.0, 0.0};

    SingleExcitationState() = default;
    explicit SingleExcitationState(std::size_t n_modes)
        : amplitudes(2 * n_modes, std::complex<double>{0.0, 0.0}) {}

    std::size_t modes() const { return amplitudes.size() / 2; }
    std::size_t dim() const { return amplitudes.size() + 1; }

    std::span<const std::complex<double>> channel(int alpha) const {
        return {amplitudes.data() + (alpha - 1) * static_cast<std::ptrdiff_t>(modes()),
                modes()};
    }
    std::span<std::complex<double>> channel(int alpha) {
        return {amplitudes.data() + (alpha - 1) * static_cast<std::ptrdiff_t>(modes()),
                modes()};
    }
};

// c_{alpha k} ~ delta_{alpha, spec.channel} * exp[-(k-k_p)^2/(4 delta_k^2) - i k x_0],
// atom amplitude zero, normalized to 1 over the discrete grid (not with the
// continuum Gaussian norm, so cutoff truncation never breaks the norm).
// Throws std::invalid_argument on a bad spec and std::runtime_error if the
// unnormalized amplitudes underflow to zero.
SingleExcitationState init_gaussian(const MomentumGrid& grid, const WavepacketSpec& spec);

double norm(const SingleExcitationState& state);

// Scaled copy with unit norm; throws std::domain_error on a zero state.
SingleExcitationState normalize(const SingleExcitationState& state);

// |0, e>: atom excited, no photons.
SingleExcitationState atom_excited_state(const MomentumGrid& grid);

// Snapshot format for debugging/regression: header "channel,k,re,im", one row
// per (channel, mode), then a final row "atom,0,re(b),im(b)".
void write_state_csv(const SingleExcitationState& state, const MomentumGrid& grid,
                     std::ostream& out);

}  // namespace wqed
