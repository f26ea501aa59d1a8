#pragma once

#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "qwall/numerics/error.hpp"
#include "qwall/scenario/scenario.hpp"

namespace qwall::scenario {

/// Malformed or unknown configuration content.
class ConfigError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

namespace detail {

/// Accepts plain numbers and multiples of pi written as "100pi", "-25pi", "pi".
inline double parse_number(const std::string& key, const std::string& text) {
    std::string body = text;
    double factor = 1.0;
    if (body.size() >= 2 && body.compare(body.size() - 2, 2, "pi") == 0) {
        factor = std::numbers::pi;
        body.erase(body.size() - 2);
        if (body.empty() || body == "+") {
            body = "1";
        } else if (body == "-") {
            body = "-1";
        }
    }
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(body, &used);
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects a number, got '" + text + "'");
    }
    if (used != body.size() || !std::isfinite(value)) {
        throw ConfigError("config: key '" + key + "' expects a number, got '" + text + "'");
    }
    return value * factor;
}

inline std::vector<std::string> scalars(const std::string& key, const YAML::Node& node) {
    std::vector<std::string> out;
    if (node.IsScalar()) {
        out.push_back(node.Scalar());
    } else if (node.IsSequence()) {
        for (const auto& item : node) {
            if (!item.IsScalar()) {
                throw ConfigError("config: key '" + key + "' must be a scalar or a flat list");
            }
            out.push_back(item.Scalar());
        }
    } else {
        throw ConfigError("config: key '" + key + "' must be a scalar or a flat list");
    }
    return out;
}

inline std::string single(const std::string& key, const YAML::Node& node) {
    const auto items = scalars(key, node);
    if (items.size() != 1 || !node.IsScalar()) {
        throw ConfigError("config: key '" + key + "' takes a single value");
    }
    return items.front();
}

inline int parse_int(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    long value = 0;
    try {
        value = std::stol(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + text + "'");
    }
    if (used != text.size() || value < 0 || value > 1'000'000'000) {
        throw ConfigError("config: key '" + key + "' expects a non-negative integer, got '" + text + "'");
    }
    return static_cast<int>(value);
}

inline std::vector<double> numbers(const std::string& key, const YAML::Node& node) {
    std::vector<double> out;
    for (const auto& s : scalars(key, node)) {
        out.push_back(parse_number(key, s));
    }
    return out;
}

} // namespace detail

/// Builds a scenario from a flat key-value YAML document. Keys absent from the
/// document keep their Scenario defaults; unknown keys are rejected.
inline Scenario parse_config(const YAML::Node& root) {
    using namespace detail;
    if (!root.IsMap()) {
        throw ConfigError("config: top level must be a key-value mapping");
    }
    Scenario s;
    for (const auto& entry : root) {
        const std::string key = entry.first.as<std::string>();
        const YAML::Node& v = entry.second;
        PhysicsConfig& p = s.physics;
        if (key == "name") {
            s.name = single(key, v);
        } else if (key == "hbar") {
            p.hbar = parse_number(key, single(key, v));
        } else if (key == "mass") {
            p.mass = parse_number(key, single(key, v));
        } else if (key == "ell0") {
            p.ell0 = parse_number(key, single(key, v));
        } else if (key == "ell1") {
            p.ell1 = parse_number(key, single(key, v));
        } else if (key == "sigma0") {
            p.sigma0 = parse_number(key, single(key, v));
        } else if (key == "u") {
            s.u_values = numbers(key, v);
        } else if (key == "k") {
            s.k_values = numbers(key, v);
        } else if (key == "n_terms") {
            p.n_terms = parse_int(key, single(key, v));
        } else if (key == "state") {
            s.states.clear();
            for (const auto& name : scalars(key, v)) {
                const auto kind = parse_state_kind(name);
                if (!kind) {
                    throw ConfigError("config: unknown state '" + name + "' (expected tgp or tbs)");
                }
                s.states.push_back(*kind);
            }
        } else if (key == "cases") {
            s.cases.clear();
            for (const auto& name : scalars(key, v)) {
                const auto c = parse_wall_case(name);
                if (!c) {
                    throw ConfigError("config: unknown case '" + name + "' (expected static or dynamic)");
                }
                s.cases.push_back(*c);
            }
        } else if (key == "t0") {
            s.window.t0 = parse_number(key, single(key, v));
        } else if (key == "t1") {
            s.window.t1 = parse_number(key, single(key, v));
        } else if (key == "samples") {
            s.window.samples = parse_int(key, single(key, v));
        } else if (key == "computations") {
            s.computations.clear();
            for (const auto& name : scalars(key, v)) {
                const auto c = parse_computation(name);
                if (!c) {
                    throw ConfigError("config: unknown computation '" + name + "'");
                }
                s.computations.insert(*c);
            }
        } else if (key == "formulation") {
            const std::string name = single(key, v);
            const auto f = parse_force_formulation(name);
            if (!f) {
                throw ConfigError("config: unknown force formulation '" + name + "'");
            }
            s.formulation = *f;
        } else if (key == "quad_panels") {
            s.quad_panels = parse_int(key, single(key, v));
        } else if (key == "traj_dt") {
            s.traj_dt = parse_number(key, single(key, v));
        } else if (key == "starts") {
            s.starts = numbers(key, v);
        } else if (key == "snapshot_points") {
            s.snapshot_points = parse_int(key, single(key, v));
        } else if (key == "oracle_points") {
            s.oracle_grid.points = parse_int(key, single(key, v));
        } else if (key == "oracle_dt") {
            s.oracle_grid.dt = parse_number(key, single(key, v));
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    return s;
}

inline Scenario parse_config_text(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return parse_config(root);
}

/// Reads and parses a config file. A missing file is an I/O problem and is
/// reported as std::filesystem::filesystem_error.
inline Scenario load_config(const std::filesystem::path& path) {
    if (!std::filesystem::is_regular_file(path)) {
        throw std::filesystem::filesystem_error("cannot read config", path,
                                                std::make_error_code(std::errc::no_such_file_or_directory));
    }
    YAML::Node root;
    try {
        root = YAML::LoadFile(path.string());
    } catch (const YAML::BadFile&) {
        throw std::filesystem::filesystem_error("cannot read config", path,
                                                std::make_error_code(std::errc::io_error));
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    Scenario s = parse_config(root);
    if (!root["name"]) {
        s.name = path.stem().string();
    }
    return s;
}

} // namespace qwall::scenario
