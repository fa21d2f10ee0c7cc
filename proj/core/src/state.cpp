#include "wqed/state.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace wqed {

namespace {

void format_row(std::ostream& out, const char* label, double k,
                std::complex<double> amp) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g\n", label, k, amp.real(),
                  amp.imag());
    out << buf;
}

}  // namespace

SingleExcitationState init_gaussian(const MomentumGrid& grid, const WavepacketSpec& spec) {
    if (spec.channel != 1 && spec.channel != 2) {
        throw std::invalid_argument("init_gaussian: channel must be 1 or 2");
    }
    if (!(spec.delta_k > 0.0)) {
        throw std::invalid_argument("init_gaussian: delta_k must be > 0");
    }
    if (grid.size() == 0) {
        throw std::invalid_argument("init_gaussian: empty grid");
    }
    if (spec.k_p < grid.momenta.front() || spec.k_p > grid.momenta.back()) {
        throw std::invalid_argument("init_gaussian: k_p outside the frequency window");
    }

    SingleExcitationState state(grid.size());
    auto block = state.channel(spec.channel);
    double norm_sq = 0.0;
    const double inv_four_var = 1.0 / (4.0 * spec.delta_k * spec.delta_k);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double k = grid.momenta[i];
        const double dk = k - spec.k_p;
        const double magnitude = std::exp(-dk * dk * inv_four_var);
        block[i] = std::polar(magnitude, -k * spec.x_0);
        norm_sq += magnitude * magnitude;
    }
    if (!(norm_sq > 0.0)) {
        throw std::runtime_error("init_gaussian: wavepacket underflows to zero on this grid");
    }
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (auto& amp : block) amp *= scale;
    return state;
}

double norm(const SingleExcitationState& state) {
    double sum = 0.0;
    for (const auto& amp : state.amplitudes) sum += std::norm(amp);
    sum += std::norm(state.atom);
    return std::sqrt(sum);
}

SingleExcitationState normalize(const SingleExcitationState& state) {
    const double n = norm(state);
    if (!(n > 0.0)) {
        throw std::domain_error("normalize: zero-norm state");
    }
    SingleExcitationState scaled = state;
    const double inv = 1.0 / n;
    for (auto& amp : scaled.amplitudes) amp *= inv;
    scaled.atom *= inv;
    return scaled;
}

SingleExcitationState atom_excited_state(const MomentumGrid& grid) {
    SingleExcitationState state(grid.size());
    state.atom = {1.0, 0.0};
    return state;
}

void write_state_csv(const SingleExcitationState& state, const MomentumGrid& grid,
                     std::ostream& out) {
    if (state.modes() != grid.size()) {
        throw std::invalid_argument("write_state_csv: state/grid size mismatch");
    }
    out << "channel,k,re,im\n";
    for (int alpha = 1; alpha <= 2; ++alpha) {
        const auto block = state.channel(alpha);
        const char* label = alpha == 1 ? "1" : "2";
        for (std::size_t i = 0; i < grid.size(); ++i) {
            format_row(out, label, grid.momenta[i], block[i]);
        }
    }
    format_row(out, "atom", 0.0, state.atom);
}

}  // namespace wqed
