#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "qwall/numerics/complex_erf.hpp"
#include "qwall/numerics/error.hpp"
#include "qwall/spectral/physics_config.hpp"

namespace qwall {

/// Which packet sits in the inner box at t = 0.
///  - tgp: Gaussian of width sigma0 cut off outside [x1, x2]
///  - tbs: ground state of the inner box
/// Both carry the kick phase exp(i k (x - xc)). `custom` tags spectra built
/// directly from coefficients.
enum class StateKind { tgp, tbs, custom };

inline std::string_view to_string(StateKind s) {
    switch (s) {
    case StateKind::tgp:
        return "tgp";
    case StateKind::tbs:
        return "tbs";
    case StateKind::custom:
        return "custom";
    }
    return "unknown";
}

inline std::optional<StateKind> parse_state_kind(std::string_view s) {
    if (s == "tgp") return StateKind::tgp;
    if (s == "tbs") return StateKind::tbs;
    return std::nullopt;
}

/// psi_0(x). Exactly zero outside [x1, x2].
inline Complex initial_amplitude(StateKind state, const PhysicsConfig& cfg, double x) {
    if (!(x >= 0.0 && x <= cfg.ell0)) {
        throw InvalidArgument("initial_amplitude: x outside [0, ell0]");
    }
    if (x < cfg.x1() || x > cfg.x2()) {
        return {};
    }
    const double s = x - cfg.xc();
    const Complex kick = std::polar(1.0, cfg.k * s);
    switch (state) {
    case StateKind::tgp: {
        const double norm = std::pow(2.0 * std::numbers::pi * cfg.sigma0 * cfg.sigma0, -0.25);
        return norm * std::exp(-s * s / (4.0 * cfg.sigma0 * cfg.sigma0)) * kick;
    }
    case StateKind::tbs: {
        const double amp = std::sqrt(2.0 / cfg.ell1);
        return amp * std::sin(std::numbers::pi * (x - cfg.x1()) / cfg.ell1) * kick;
    }
    case StateKind::custom:
        break;
    }
    throw UnsupportedMethod("initial_amplitude: custom spectra have no closed-form psi_0");
}

} // namespace qwall
