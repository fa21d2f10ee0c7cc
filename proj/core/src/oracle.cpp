#include "wqed/oracle.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace wqed {

DenseHamiltonian build_hamiltonian(const SimulationConfig& config, const MomentumGrid& grid,
                                   std::size_t max_modes) {
    config.validate();
    if (grid.size() == 0) {
        throw std::invalid_argument("build_hamiltonian: empty grid");
    }
    if (grid.size() > max_modes) {
        throw std::length_error("build_hamiltonian: grid exceeds the dense-storage limit");
    }

    const std::size_t m_count = grid.size();
    const Eigen::Index dim = static_cast<Eigen::Index>(2 * m_count + 1);
    const Eigen::Index atom = dim - 1;
    const std::complex<double> coupling{0.0,
                                        std::sqrt(config.bare.gamma / (2.0 * config.length))};

    DenseHamiltonian h;
    h.n_modes = m_count;
    h.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t alpha = 0; alpha < 2; ++alpha) {
        for (std::size_t m = 0; m < m_count; ++m) {
            const Eigen::Index idx = static_cast<Eigen::Index>(alpha * m_count + m);
            h.matrix(idx, idx) = grid.momenta[m];
            h.matrix(atom, idx) = coupling;             // <e| H |alpha k, g> = +i g
            h.matrix(idx, atom) = std::conj(coupling);  // Hermitian conjugate
        }
    }
    h.matrix(atom, atom) = config.bare.omega0;
    return h;
}

SingleExcitationState exact_propagate(const SingleExcitationState& initial, double t,
                                      const DenseHamiltonian& hamiltonian) {
    const Eigen::Index dim = hamiltonian.matrix.rows();
    if (static_cast<Eigen::Index>(initial.dim()) != dim) {
        throw std::invalid_argument("exact_propagate: state/Hamiltonian dimension mismatch");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian.matrix);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("exact_propagate: eigendecomposition failed");
    }

    Eigen::VectorXcd psi(dim);
    for (Eigen::Index i = 0; i < dim - 1; ++i) psi(i) = initial.amplitudes[i];
    psi(dim - 1) = initial.atom;

    Eigen::VectorXcd projections = solver.eigenvectors().adjoint() * psi;
    for (Eigen::Index j = 0; j < dim; ++j) {
        projections(j) *= std::polar(1.0, -solver.eigenvalues()(j) * t);
    }
    psi = solver.eigenvectors() * projections;

    SingleExcitationState out(hamiltonian.n_modes);
    for (Eigen::Index i = 0; i < dim - 1; ++i) out.amplitudes[i] = psi(i);
    out.atom = psi(dim - 1);
    return out;
}

SingleExcitationState to_interaction_picture(const SingleExcitationState& schrodinger,
                                             double t, const SimulationConfig& config,
                                             const MomentumGrid& grid) {
    if (schrodinger.modes() != grid.size()) {
        throw std::invalid_argument("to_interaction_picture: state/grid size mismatch");
    }
    SingleExcitationState out = schrodinger;
    const std::size_t m_count = grid.size();
    for (std::size_t m = 0; m < m_count; ++m) {
        const auto phase = std::polar(1.0, grid.momenta[m] * t);
        out.amplitudes[m] *= phase;
        out.amplitudes[m_count + m] *= phase;
    }
    out.atom *= std::polar(1.0, config.bare.omega0 * t);
    return out;
}

}  // namespace wqed
