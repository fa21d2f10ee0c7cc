#include "wqed/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <nlohmann/json.hpp>

namespace wqed {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Cutoffs in the paper's parameterizations land exactly on mode indices
// (e.g. lambda_uv = 20*pi with L = 100 gives n = 1000). Snap within a 1e-9
// relative gap so rounding in lambda*L/2pi cannot drop an edge mode.
long snapped_floor(double x) {
    const double tol = 1e-9 * std::max(1.0, std::abs(x));
    return static_cast<long>(std::floor(x + tol));
}

long snapped_ceil(double x) {
    const double tol = 1e-9 * std::max(1.0, std::abs(x));
    return static_cast<long>(std::ceil(x - tol));
}

}  // namespace

void FrequencyWindow::validate() const {
    if (!std::isfinite(lambda_ir) || !std::isfinite(lambda_uv)) {
        throw std::invalid_argument("FrequencyWindow: cutoffs must be finite");
    }
    if (lambda_ir < 0.0) {
        throw std::invalid_argument("FrequencyWindow: lambda_ir must be >= 0");
    }
    if (!(lambda_ir < lambda_uv)) {
        throw std::invalid_argument("FrequencyWindow: requires lambda_ir < lambda_uv");
    }
}

void BareParams::validate() const {
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
        throw std::invalid_argument("BareParams: omega0 must be > 0");
    }
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("BareParams: gamma must be >= 0");
    }
}

void PhysicalParams::validate() const {
    if (!std::isfinite(omega_a)) {
        throw std::invalid_argument("PhysicalParams: omega_a must be finite");
    }
    if (!(decay_rate > 0.0) || !std::isfinite(decay_rate)) {
        throw std::invalid_argument("PhysicalParams: decay rate must be > 0");
    }
}

void SimulationConfig::validate() const {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw std::invalid_argument("SimulationConfig: length must be > 0");
    }
    window.validate();
    bare.validate();
    if (!window.strictly_contains(bare.omega0)) {
        throw std::invalid_argument(
            "SimulationConfig: omega0 must lie strictly inside the frequency window");
    }
}

SimulationConfig SimulationConfig::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_object()) {
        throw std::invalid_argument("SimulationConfig: JSON root must be an object");
    }
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "L" && key != "lambda_ir" && key != "lambda_uv" &&
            key != "omega_0" && key != "gamma") {
            throw std::invalid_argument("SimulationConfig: unknown key \"" + key + "\"");
        }
    }
    SimulationConfig cfg;
    cfg.length = j.at("L").get<double>();
    cfg.window.lambda_ir = j.at("lambda_ir").get<double>();
    cfg.window.lambda_uv = j.at("lambda_uv").get<double>();
    cfg.bare.omega0 = j.at("omega_0").get<double>();
    cfg.bare.gamma = j.at("gamma").get<double>();
    cfg.validate();
    return cfg;
}

std::string SimulationConfig::to_json() const {
    nlohmann::json j;
    j["L"] = length;
    j["lambda_ir"] = window.lambda_ir;
    j["lambda_uv"] = window.lambda_uv;
    j["omega_0"] = bare.omega0;
    j["gamma"] = bare.gamma;
    return j.dump();
}

double MomentumGrid::spacing() const {
    if (momenta.size() < 2) {
        throw std::logic_error("MomentumGrid: spacing needs at least two modes");
    }
    return (momenta.back() - momenta.front()) /
           static_cast<double>(n_indices.back() - n_indices.front());
}

MomentumGrid build_grid(double length, const FrequencyWindow& window) {
    if (!(length > 0.0)) {
        throw std::invalid_argument("build_grid: length must be > 0");
    }
    window.validate();

    const double step = kTwoPi / length;
    const long n_min = snapped_ceil(window.lambda_ir / step);
    const long n_max = snapped_floor(window.lambda_uv / step);
    if (n_min > n_max) {
        throw EmptyGridError("build_grid: no quantized momentum in window [" +
                             std::to_string(window.lambda_ir) + ", " +
                             std::to_string(window.lambda_uv) + "] with spacing " +
                             std::to_string(step));
    }

    MomentumGrid grid;
    grid.momenta.reserve(static_cast<std::size_t>(n_max - n_min + 1));
    grid.n_indices.reserve(static_cast<std::size_t>(n_max - n_min + 1));
    for (long n = n_min; n <= n_max; ++n) {
        grid.n_indices.push_back(n);
        grid.momenta.push_back(static_cast<double>(n) * step);
    }
    return grid;
}

MomentumGrid build_grid(const SimulationConfig& config) {
    config.validate();
    return build_grid(config.length, config.window);
}

std::uint64_t hilbert_dim(const SimulationConfig& config, unsigned n_excitations) {
    if (n_excitations < 1) {
        throw std::invalid_argument("hilbert_dim: n_excitations must be >= 1");
    }
    build_grid(config);  // propagate the empty-grid error

    const double bandwidth_modes = config.length / kTwoPi * config.window.bandwidth();
    const std::uint64_t base = 2ULL * static_cast<std::uint64_t>(snapped_floor(bandwidth_modes));
    std::uint64_t dim = 1;
    for (unsigned i = 0; i < n_excitations; ++i) {
        if (base != 0 && dim > (std::numeric_limits<std::uint64_t>::max() - 1) / base) {
            throw std::overflow_error("hilbert_dim: dimension overflows 64 bits");
        }
        dim *= base;
    }
    return dim + 1;
}

std::size_t state_size(const SimulationConfig& config) {
    return 2 * build_grid(config).size() + 1;
}

}  // namespace wqed
