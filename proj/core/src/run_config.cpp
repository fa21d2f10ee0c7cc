#include "wqed/run_config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wqed {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw std::invalid_argument("run config: " + where + ": " + what);
}

const json& get_block(const json& root, const char* name) {
    if (!root.contains(name)) fail(name, "missing block");
    const json& block = root.at(name);
    if (!block.is_object()) fail(name, "must be an object");
    return block;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool known = false;
        for (const char* name : allowed) {
            if (key == name) {
                known = true;
                break;
            }
        }
        if (!known) fail(where, "unknown key \"" + key + "\"");
    }
}

double get_number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) fail(where, std::string("missing key \"") + key + "\"");
    const json& value = obj.at(key);
    if (!value.is_number()) fail(where, std::string("\"") + key + "\" must be a number");
    const double x = value.get<double>();
    if (!std::isfinite(x)) fail(where, std::string("\"") + key + "\" must be finite");
    return x;
}

double get_number_or(const json& obj, const char* key, const std::string& where,
                     double fallback) {
    return obj.contains(key) ? get_number(obj, key, where) : fallback;
}

std::vector<double> get_number_array(const json& obj, const char* key,
                                     const std::string& where) {
    if (!obj.contains(key)) fail(where, std::string("missing key \"") + key + "\"");
    const json& value = obj.at(key);
    if (!value.is_array() || value.empty()) {
        fail(where, std::string("\"") + key + "\" must be a non-empty array");
    }
    std::vector<double> out;
    out.reserve(value.size());
    for (const auto& item : value) {
        if (!item.is_number() || !std::isfinite(item.get<double>())) {
            fail(where, std::string("\"") + key + "\" entries must be finite numbers");
        }
        out.push_back(item.get<double>());
    }
    return out;
}

SimulationConfig parse_model(const json& block) {
    reject_unknown(block, {"L", "lambda_ir", "lambda_uv", "omega_0", "gamma"}, "model");
    SimulationConfig cfg;
    cfg.length = get_number(block, "L", "model");
    cfg.window.lambda_ir = get_number(block, "lambda_ir", "model");
    cfg.window.lambda_uv = get_number(block, "lambda_uv", "model");
    cfg.bare.omega0 = get_number(block, "omega_0", "model");
    cfg.bare.gamma = get_number(block, "gamma", "model");
    cfg.validate();
    return cfg;
}

WavepacketSpec parse_packet(const json& block) {
    reject_unknown(block, {"k_p", "delta_k", "x_0", "channel"}, "packet");
    WavepacketSpec packet;
    packet.k_p = get_number(block, "k_p", "packet");
    packet.delta_k = get_number(block, "delta_k", "packet");
    packet.x_0 = get_number(block, "x_0", "packet");
    packet.channel = static_cast<int>(get_number_or(block, "channel", "packet", 1.0));
    if (packet.channel != 1 && packet.channel != 2) fail("packet", "channel must be 1 or 2");
    if (!(packet.delta_k > 0.0)) fail("packet", "delta_k must be > 0");
    return packet;
}

TimeGrid parse_time(const json& block) {
    reject_unknown(block, {"T", "n_steps"}, "time");
    TimeGrid grid;
    grid.total_time = get_number(block, "T", "time");
    const double raw_steps = get_number(block, "n_steps", "time");
    if (raw_steps < 0.0 || raw_steps != std::floor(raw_steps)) {
        fail("time", "n_steps must be a nonnegative integer");
    }
    grid.n_steps = static_cast<std::size_t>(raw_steps);
    grid.validate();
    return grid;
}

SweepBlock parse_sweep(const json& block) {
    reject_unknown(block, {"variable", "values"}, "sweep");
    SweepBlock sweep;
    if (!block.contains("variable") || !block.at("variable").is_string()) {
        fail("sweep", "\"variable\" must be a string");
    }
    const std::string name = block.at("variable").get<std::string>();
    if (name == "omega_p") {
        sweep.variable = SweepVariable::OmegaP;
    } else if (name == "lambda_uv") {
        sweep.variable = SweepVariable::LambdaUv;
    } else if (name == "n_steps") {
        sweep.variable = SweepVariable::NSteps;
    } else if (name == "half_width") {
        sweep.variable = SweepVariable::HalfWidth;
    } else {
        fail("sweep", "variable must be one of omega_p, lambda_uv, n_steps, half_width");
    }
    sweep.values = get_number_array(block, "values", "sweep");
    return sweep;
}

FitWindow parse_fit(const json& block) {
    reject_unknown(block, {"t_start", "t_end"}, "fit");
    FitWindow window;
    window.t_start = get_number(block, "t_start", "fit");
    window.t_end = get_number(block, "t_end", "fit");
    return window;
}

PhysicalParams parse_physical(const json& block) {
    reject_unknown(block, {"omega_a", "gamma_phys"}, "physical");
    PhysicalParams phys;
    phys.omega_a = get_number(block, "omega_a", "physical");
    phys.decay_rate = get_number(block, "gamma_phys", "physical");
    phys.validate();
    return phys;
}

ConvergeBlock parse_converge(const json& block) {
    reject_unknown(block, {"half_widths", "omega_p", "n_steps", "L", "T", "delta_k", "x_0"},
                   "converge");
    ConvergeBlock converge;
    converge.half_widths = get_number_array(block, "half_widths", "converge");
    converge.omega_p = get_number_array(block, "omega_p", "converge");
    for (double raw : get_number_array(block, "n_steps", "converge")) {
        if (raw <= 0.0 || raw != std::floor(raw)) {
            fail("converge", "n_steps entries must be positive integers");
        }
        converge.n_steps_list.push_back(static_cast<std::size_t>(raw));
    }
    ConvergenceSettings defaults;
    converge.settings.length = get_number_or(block, "L", "converge", defaults.length);
    converge.settings.total_time = get_number_or(block, "T", "converge", defaults.total_time);
    converge.settings.delta_k = get_number_or(block, "delta_k", "converge", defaults.delta_k);
    converge.settings.x_0 = get_number_or(block, "x_0", "converge", defaults.x_0);
    return converge;
}

}  // namespace

const char* run_kind_name(RunKind kind) {
    switch (kind) {
        case RunKind::Scatter: return "scatter";
        case RunKind::Sweep: return "sweep";
        case RunKind::Decay: return "decay";
        case RunKind::Converge: return "converge";
        case RunKind::GridInfo: return "grid-info";
    }
    return "?";
}

RunConfig parse_run_config(const std::string& text, RunKind kind) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("run config: invalid JSON: ") + e.what());
    }
    if (!root.is_object()) fail("document", "root must be an object");

    RunConfig cfg;
    cfg.kind = kind;
    switch (kind) {
        case RunKind::Scatter:
            reject_unknown(root, {"model", "packet", "time"}, "document");
            cfg.model = parse_model(get_block(root, "model"));
            cfg.packet = parse_packet(get_block(root, "packet"));
            cfg.time = parse_time(get_block(root, "time"));
            break;
        case RunKind::Sweep:
            reject_unknown(root, {"model", "packet", "time", "sweep"}, "document");
            cfg.model = parse_model(get_block(root, "model"));
            cfg.packet = parse_packet(get_block(root, "packet"));
            cfg.time = parse_time(get_block(root, "time"));
            cfg.sweep = parse_sweep(get_block(root, "sweep"));
            break;
        case RunKind::Decay:
            reject_unknown(root, {"model", "time", "fit"}, "document");
            cfg.model = parse_model(get_block(root, "model"));
            cfg.time = parse_time(get_block(root, "time"));
            if (root.contains("fit")) cfg.fit = parse_fit(get_block(root, "fit"));
            break;
        case RunKind::Converge:
            reject_unknown(root, {"physical", "converge"}, "document");
            cfg.physical = parse_physical(get_block(root, "physical"));
            cfg.converge = parse_converge(get_block(root, "converge"));
            break;
        case RunKind::GridInfo:
            reject_unknown(root, {"model"}, "document");
            cfg.model = parse_model(get_block(root, "model"));
            break;
    }
    cfg.canonical_json = root.dump();
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path, RunKind kind) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("run config: cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str(), kind);
}

}  // namespace wqed
