// renorm.hpp — Kernel-expansion coefficients and the bare <-> physical parameter map
//
// The atomic equation of motion under hard cutoffs expands into moment
// coefficients alpha_n of the memory kernel. Truncating at n = 1 yields the
// closed-form map
//   omega_A = omega0 - (gamma/2pi) f log((lambda_uv - omega0)/(omega0 - lambda_ir)),
//   Gamma   = gamma f,      f = (1 - gamma/(pi H))^{-1},
// with H the harmonic mean of the distances from omega0 to the two cutoffs.
// The forward map is evaluated from the closed forms of alpha_0 and alpha_1;
// the kernel itself is never discretized.

#pragma once

#include <complex>

#include "wqed/model.hpp"

namespace wqed {

// Bare parameters sit outside the region where the truncated expansion has a
// positive decay rate (gamma >= pi * H).
struct InvalidRenormRegion : std::domain_error {
    using std::domain_error::domain_error;
};

// H(a, b) = 2ab/(a + b); throws std::invalid_argument on nonpositive input.
double harmonic_mean(double a, double b);

// alpha_0 = -gamma/2 + i (gamma/2pi) log((lambda_uv - omega0)/(omega0 - lambda_ir)).
// Requires omega0 strictly inside the window. The real part is -gamma/2 for
// every window; the imaginary part vanishes for centered windows.
std::complex<double> alpha0(const BareParams& bare, const FrequencyWindow& window);

// alpha_1 = -(gamma/2pi) (1/(lambda_ir - omega0) - 1/(lambda_uv - omega0));
// purely real and positive inside the window. Equals gamma/(pi H).
double alpha1(const BareParams& bare, const FrequencyWindow& window);

// Higher moments via the closed-form derivatives of alpha_1,
//   alpha_n = -(i^{n-1} gamma / (2 n pi)) [ (lambda_ir-omega0)^{-n} - (lambda_uv-omega0)^{-n} ],
// consistent with the recursion alpha_{n+1} = (i/(n+1)) d alpha_n / d omega0.
// Diagnostics only (n >= 2); these never feed the forward map.
std::complex<double> alpha_n(unsigned n, const BareParams& bare, const FrequencyWindow& window);

// |alpha_2| / alpha_1: size of the first neglected expansion term relative to
// the one retained. Reported as a diagnostic; no hard acceptance bound.
double alpha_ratio_diagnostic(const BareParams& bare, const FrequencyWindow& window);

struct RenormReport {
    PhysicalParams physical;
    double f_factor{0.0};      // decay-rate multiplier f(omega0, gamma)
    double harmonic_mean{0.0};  // H of the cutoff distances
    bool valid{false};          // gamma < pi * H
};

// Forward map bare -> physical. Throws InvalidRenormRegion when gamma >= pi*H
// (the boundary itself is invalid: f diverges there).
RenormReport renormalize(const BareParams& bare, const FrequencyWindow& window);

struct ValidityCheck {
    bool valid{false};
    double margin{0.0};  // 1 - gamma/(pi H); positive inside the valid region
};

ValidityCheck validity_check(const BareParams& bare, const FrequencyWindow& window);

struct InverseParameterization {
    BareParams bare;
    FrequencyWindow window;
};

// Renormalization-aware prescription: window [omega_a - half_width,
// omega_a + half_width], omega0 = omega_a, gamma = Gamma/(1 + Gamma/(pi*half_width)).
// The result always satisfies the validity condition. Throws
// std::invalid_argument when omega_a < half_width (window would dip below 0).
InverseParameterization bare_from_physical(const PhysicalParams& phys, double half_width);

}  // namespace wqed
