#include "wqed/observables.hpp"

#include <cmath>

namespace wqed {

namespace {

using cplx = std::complex<double>;

ScatteringCoefficients lorentzian_pair(double omega_k, double center, double width) {
    const cplx denom{omega_k - center, width / 2.0};
    return {cplx{0.0, -width / 2.0} / denom, cplx{omega_k - center, 0.0} / denom};
}

void require_channel1_only(const SingleExcitationState& state, const MomentumGrid& grid) {
    if (state.modes() != grid.size()) {
        throw std::invalid_argument("predicted probabilities: state/grid size mismatch");
    }
    for (const auto& amp : state.channel(2)) {
        if (amp != cplx{0.0, 0.0}) {
            throw std::invalid_argument(
                "predicted probabilities: initial state must occupy channel 1 only");
        }
    }
}

}  // namespace

ExcitationProbabilities excitation_probs(const SingleExcitationState& state,
                                         const MomentumGrid& grid) {
    if (state.modes() != grid.size()) {
        throw std::invalid_argument("excitation_probs: state/grid size mismatch");
    }
    ExcitationProbabilities probs;
    for (const auto& amp : state.channel(1)) probs.transmitted += std::norm(amp);
    for (const auto& amp : state.channel(2)) probs.reflected += std::norm(amp);
    probs.atom = std::norm(state.atom);
    return probs;
}

ScatteringCoefficients bare_coefficients(double omega_k, const BareParams& bare) {
    bare.validate();
    if (!(bare.gamma > 0.0)) {
        throw std::invalid_argument("bare_coefficients: gamma must be > 0");
    }
    return lorentzian_pair(omega_k, bare.omega0, bare.gamma);
}

ScatteringCoefficients physical_coefficients(double omega_k, const PhysicalParams& phys) {
    phys.validate();
    return lorentzian_pair(omega_k, phys.omega_a, phys.decay_rate);
}

CoefficientFn coefficient_fn(const BareParams& bare) {
    bare.validate();
    if (!(bare.gamma > 0.0)) {
        throw std::invalid_argument("coefficient_fn: gamma must be > 0");
    }
    return [bare](double omega_k) { return lorentzian_pair(omega_k, bare.omega0, bare.gamma); };
}

CoefficientFn coefficient_fn(const PhysicalParams& phys) {
    phys.validate();
    return [phys](double omega_k) {
        return lorentzian_pair(omega_k, phys.omega_a, phys.decay_rate);
    };
}

double predicted_reflection(const SingleExcitationState& initial, const MomentumGrid& grid,
                            const CoefficientFn& coeffs) {
    require_channel1_only(initial, grid);
    const auto block = initial.channel(1);
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        sum += std::norm(coeffs(grid.momenta[i]).r * block[i]);
    }
    return sum;
}

double predicted_transmission(const SingleExcitationState& initial, const MomentumGrid& grid,
                              const CoefficientFn& coeffs) {
    require_channel1_only(initial, grid);
    const auto block = initial.channel(1);
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        sum += std::norm(coeffs(grid.momenta[i]).t * block[i]);
    }
    return sum;
}

double lorentzian_reflection(double omega_p, double center, double width) {
    const double half = width / 2.0;
    const double detuning = omega_p - center;
    return half * half / (detuning * detuning + half * half);
}

double lorentzian_reflection(double omega_p, const BareParams& bare) {
    return lorentzian_reflection(omega_p, bare.omega0, bare.gamma);
}

double lorentzian_reflection(double omega_p, const PhysicalParams& phys) {
    return lorentzian_reflection(omega_p, phys.omega_a, phys.decay_rate);
}

}  // namespace wqed
