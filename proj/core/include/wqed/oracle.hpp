// oracle.hpp — Exact propagation of the discretized N = 1 model
//
// Dense Hermitian diagonalization, used as brute-force ground truth for the
// RK4 propagator at small mode counts. Test-support module; no file formats.

#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "wqed/model.hpp"
#include "wqed/state.hpp"

namespace wqed {

// Schrodinger-picture Hamiltonian on the single-excitation basis, ordered
// exactly like SingleExcitationState: channel-1 modes, channel-2 modes, atom.
// Diagonal entries are omega_k (photons) and omega0 (atom); the atom row
// couples as <e| H |alpha k, g> = i sqrt(gamma/2L).
struct DenseHamiltonian {
    Eigen::MatrixXcd matrix;
    std::size_t n_modes{0};
};

// Throws std::length_error when the grid exceeds max_modes (dense storage
// guard).
DenseHamiltonian build_hamiltonian(const SimulationConfig& config, const MomentumGrid& grid,
                                   std::size_t max_modes = 2048);

// psi(t) = sum_j e^{-i E_j t} <E_j|psi0> |E_j> via eigendecomposition
// (eigenvalues ascending). Schrodinger picture; unitary by construction.
SingleExcitationState exact_propagate(const SingleExcitationState& initial, double t,
                                      const DenseHamiltonian& hamiltonian);

// Multiply photon amplitudes by e^{+i omega_k t} and the atomic amplitude by
// e^{+i omega0 t}, converting a Schrodinger-picture state to the interaction
// picture used by the RK4 propagator.
SingleExcitationState to_interaction_picture(const SingleExcitationState& schrodinger,
                                             double t, const SimulationConfig& config,
                                             const MomentumGrid& grid);

}  // namespace wqed
