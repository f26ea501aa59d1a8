#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "qwall/numerics/complex_erf.hpp"
#include "qwall/numerics/error.hpp"
#include "qwall/spectral/physics_config.hpp"

namespace qwall {

/// Truncated moving-wall kernel K(x, t; x', 0),
///
///   2/sqrt(l0 l) exp(i m u/(2 hbar) (x^2/l - x'^2/l0))
///       sum_n exp(i n^2 pi^2 hbar/(2 m u) (1/l - 1/l0)) sin(n pi x/l) sin(n pi x'/l0).
///
/// For u = 0 the mode phase is replaced by its limit exp(-i n^2 pi^2 hbar t/(2 m l0^2)).
inline Complex propagator(const PhysicsConfig& cfg, double x, double t, double x_prime, int n_terms) {
    if (!(t > 0.0)) {
        throw InvalidArgument("propagator: t must be positive");
    }
    cfg.require_time(t);
    const double width = cfg.width(t);
    if (!(x >= 0.0 && x <= width)) {
        throw InvalidArgument("propagator: x outside [0, l(t)]");
    }
    if (!(x_prime >= 0.0 && x_prime <= cfg.ell0)) {
        throw InvalidArgument("propagator: x' outside [0, l0]");
    }
    if (n_terms < 1) {
        throw InvalidArgument("propagator: n_terms must be >= 1");
    }
    constexpr double pi = std::numbers::pi;
    const double mode_rate = cfg.u != 0.0
                                 ? pi * pi * cfg.hbar / (2.0 * cfg.mass * cfg.u) * (1.0 / width - 1.0 / cfg.ell0)
                                 : -pi * pi * cfg.hbar * t / (2.0 * cfg.mass * cfg.ell0 * cfg.ell0);
    Complex sum{};
    for (int n = 1; n <= n_terms; ++n) {
        const double nn = static_cast<double>(n);
        sum += std::polar(1.0, nn * nn * mode_rate) * (std::sin(nn * pi * x / width) * std::sin(nn * pi * x_prime / cfg.ell0));
    }
    const double chirp = cfg.mass * cfg.u / (2.0 * cfg.hbar) * (x * x / width - x_prime * x_prime / cfg.ell0);
    return 2.0 / std::sqrt(cfg.ell0 * width) * std::polar(1.0, chirp) * sum;
}

} // namespace qwall
