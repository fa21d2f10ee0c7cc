#include "wqed/renorm.hpp"

#include <cmath>
#include <numbers>

namespace wqed {

namespace {

constexpr double kPi = std::numbers::pi;

// Distances from omega0 to the two cutoffs; both positive inside the window.
struct CutoffDistances {
    double below;  // omega0 - lambda_ir
    double above;  // lambda_uv - omega0
};

CutoffDistances distances(const BareParams& bare, const FrequencyWindow& window) {
    bare.validate();
    if (!(bare.gamma > 0.0)) {
        throw std::invalid_argument("renorm: gamma must be > 0");
    }
    window.validate();
    if (!window.strictly_contains(bare.omega0)) {
        throw std::invalid_argument("renorm: omega0 must lie strictly inside the window");
    }
    return {bare.omega0 - window.lambda_ir, window.lambda_uv - bare.omega0};
}

std::complex<double> i_power(unsigned m) {
    switch (m % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

// x^{-n} by repeated multiplication; keeps (-a)^{-n} and a^{-n} exactly
// opposite/equal so centered windows cancel bitwise.
double inv_power(double x, unsigned n) {
    double p = 1.0;
    for (unsigned i = 0; i < n; ++i) p *= x;
    return 1.0 / p;
}

}  // namespace

double harmonic_mean(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::invalid_argument("harmonic_mean: inputs must be > 0");
    }
    return 2.0 * a * b / (a + b);
}

std::complex<double> alpha0(const BareParams& bare, const FrequencyWindow& window) {
    const auto d = distances(bare, window);
    // Single division before the log so exactly symmetric windows give
    // log(1) == 0 and with it a vanishing frequency shift.
    return {-bare.gamma / 2.0, bare.gamma / (2.0 * kPi) * std::log(d.above / d.below)};
}

double alpha1(const BareParams& bare, const FrequencyWindow& window) {
    const auto d = distances(bare, window);
    return bare.gamma / (2.0 * kPi) * (1.0 / d.below + 1.0 / d.above);
}

std::complex<double> alpha_n(unsigned n, const BareParams& bare,
                             const FrequencyWindow& window) {
    if (n < 2) {
        throw std::invalid_argument("alpha_n: use alpha0/alpha1 for n < 2");
    }
    const auto d = distances(bare, window);
    const double below_term = inv_power(-d.below, n);
    const double above_term = inv_power(d.above, n);
    const double scale = -bare.gamma / (2.0 * static_cast<double>(n) * kPi);
    return i_power(n - 1) * (scale * (below_term - above_term));
}

double alpha_ratio_diagnostic(const BareParams& bare, const FrequencyWindow& window) {
    return std::abs(alpha_n(2, bare, window)) / alpha1(bare, window);
}

RenormReport renormalize(const BareParams& bare, const FrequencyWindow& window) {
    const auto d = distances(bare, window);
    const double h = harmonic_mean(d.below, d.above);
    const double margin = 1.0 - bare.gamma / (kPi * h);
    if (!(margin > 0.0)) {
        throw InvalidRenormRegion(
            "renormalize: gamma >= pi * H(omega0 - lambda_ir, lambda_uv - omega0); "
            "the truncated expansion gives a nonpositive decay rate");
    }
    const double f = 1.0 / margin;
    RenormReport report;
    report.f_factor = f;
    report.harmonic_mean = h;
    report.valid = true;
    report.physical.decay_rate = bare.gamma * f;
    report.physical.omega_a =
        bare.omega0 - bare.gamma / (2.0 * kPi) * f * std::log(d.above / d.below);
    return report;
}

ValidityCheck validity_check(const BareParams& bare, const FrequencyWindow& window) {
    const auto d = distances(bare, window);
    const double h = harmonic_mean(d.below, d.above);
    const double margin = 1.0 - bare.gamma / (kPi * h);
    return {margin > 0.0, margin};
}

InverseParameterization bare_from_physical(const PhysicalParams& phys, double half_width) {
    phys.validate();
    if (!(half_width > 0.0)) {
        throw std::invalid_argument("bare_from_physical: half_width must be > 0");
    }
    if (phys.omega_a < half_width) {
        throw std::invalid_argument(
            "bare_from_physical: window would extend below zero (omega_a < half_width)");
    }
    InverseParameterization inv;
    inv.window = {phys.omega_a - half_width, phys.omega_a + half_width};
    inv.bare.omega0 = phys.omega_a;
    inv.bare.gamma = phys.decay_rate / (1.0 + phys.decay_rate / (kPi * half_width));
    return inv;
}

}  // namespace wqed
