// observables.hpp — Excitation probabilities and analytic scattering coefficients

#pragma once

#include <complex>
#include <functional>

#include "wqed/model.hpp"
#include "wqed/propagator.hpp"
#include "wqed/state.hpp"

namespace wqed {

struct ExcitationProbabilities {
    double transmitted{0.0};  // channel 1
    double reflected{0.0};    // channel 2
    double atom{0.0};
    double sum() const { return transmitted + reflected + atom; }
};

ExcitationProbabilities excitation_probs(const SingleExcitationState& state,
                                         const MomentumGrid& grid);

// Single-photon reflection/transmission amplitudes. Satisfy |r|^2 + |t|^2 = 1
// and r = t - 1 for every frequency.
struct ScatteringCoefficients {
    std::complex<double> r;
    std::complex<double> t;
};

// r = -(i gamma/2) / ((omega_k - omega0) + i gamma/2),
// t = (omega_k - omega0) / ((omega_k - omega0) + i gamma/2).
ScatteringCoefficients bare_coefficients(double omega_k, const BareParams& bare);

// Same functional form with the renormalized pair (omega_a, decay_rate).
ScatteringCoefficients physical_coefficients(double omega_k, const PhysicalParams& phys);

// Passed by value so bare and physical predictions share one code path.
using CoefficientFn = std::function<ScatteringCoefficients(double)>;
CoefficientFn coefficient_fn(const BareParams& bare);
CoefficientFn coefficient_fn(const PhysicalParams& phys);

// R^(th) = sum_k |r_k c_{1k,0}|^2 over the same discrete grid the simulator
// uses. The initial state must occupy channel 1 only.
double predicted_reflection(const SingleExcitationState& initial, const MomentumGrid& grid,
                            const CoefficientFn& coeffs);
double predicted_transmission(const SingleExcitationState& initial, const MomentumGrid& grid,
                              const CoefficientFn& coeffs);

// Monochromatic-limit reflection probability (gamma^2/4)/((omega_p-omega0)^2 + gamma^2/4).
double lorentzian_reflection(double omega_p, double center, double width);
double lorentzian_reflection(double omega_p, const BareParams& bare);
double lorentzian_reflection(double omega_p, const PhysicalParams& phys);

// Final excitation distribution of one scattering run plus its trajectory.
struct ScatteringRecord {
    double final_reflection{0.0};
    double final_transmission{0.0};
    double final_atom{0.0};
    bool relaxation_warning{false};  // final atomic population above 1e-3
    Trajectory trajectory;
};

}  // namespace wqed
