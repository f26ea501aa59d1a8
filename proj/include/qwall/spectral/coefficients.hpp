#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "qwall/numerics/complex_erf.hpp"
#include "qwall/numerics/error.hpp"
#include "qwall/numerics/quadrature.hpp"
#include "qwall/spectral/initial_state.hpp"
#include "qwall/spectral/physics_config.hpp"

namespace qwall {

/// Simpson panels over the inner box [x1, x2] for projection coefficients.
/// Fixed by a convergence study: at 20000 panels the n = 400 projection at
/// the reference setup agrees with the erf closed form to ~1e-10 relative.
inline constexpr int coefficient_panels_default = 20000;

/// Spatial integrals over the whole box [0, l(t)].
inline constexpr int spatial_panels_default = 16000;

namespace detail {

/// exp(-i m u x^2 / (2 hbar l0)): inverse of the t = 0 chirp.
inline Complex initial_chirp_conj(const PhysicsConfig& cfg, double x) {
    return std::polar(1.0, -cfg.mass * cfg.u * x * x / (2.0 * cfg.hbar * cfg.ell0));
}

} // namespace detail

/// f_n = int dx' exp(-i m u x'^2/(2 hbar l0)) sin(n pi x'/l0) psi_0(x') over
/// [x1, x2] by Simpson's rule.
inline Complex coefficient_quadrature(int n, StateKind state, const PhysicsConfig& cfg,
                                      QuadratureSpec spec = QuadratureSpec(coefficient_panels_default)) {
    if (n < 1) {
        throw InvalidArgument("coefficient_quadrature: n must be >= 1");
    }
    const double kn = n * std::numbers::pi / cfg.ell0;
    return simpson(
        [&](double x) {
            return detail::initial_chirp_conj(cfg, x) * std::sin(kn * x) * initial_amplitude(state, cfg, x);
        },
        cfg.x1(), cfg.x2(), spec);
}

/// All f_1..f_N on one shared Simpson grid. The sine table is built by complex
/// rotation per node, so the cost is one exp per node rather than one per (n, node).
inline std::vector<Complex> coefficients_quadrature(StateKind state, const PhysicsConfig& cfg,
                                                    QuadratureSpec spec = QuadratureSpec(coefficient_panels_default)) {
    const int panels = spec.panels();
    const int terms = cfg.n_terms;
    const double a = cfg.x1();
    const double h = (cfg.x2() - a) / panels;
    std::vector<Complex> out(static_cast<std::size_t>(terms));
    for (int j = 0; j <= panels; ++j) {
        const double x = a + j * h;
        const Complex g = simpson_weight(j, panels, h) * detail::initial_chirp_conj(cfg, x) *
                          initial_amplitude(state, cfg, x);
        if (g == Complex{}) {
            continue;
        }
        const Complex step = std::polar(1.0, std::numbers::pi * x / cfg.ell0);
        Complex rot = step;
        for (int n = 1; n <= terms; ++n) {
            out[static_cast<std::size_t>(n - 1)] += g * rot.imag();
            rot *= step;
        }
    }
    return out;
}

/// Closed-form TGP coefficient: four erf terms with a common Gaussian prefactor.
/// Each exponential is paired with its erf through ErfParts::scaled so that
/// large erf arguments never overflow on their own.
inline Complex coefficient_closed_form_tgp(int n, const PhysicsConfig& cfg) {
    if (n < 1) {
        throw InvalidArgument("coefficient_closed_form_tgp: n must be >= 1");
    }
    constexpr Complex i{0.0, 1.0};
    constexpr double pi = std::numbers::pi;
    const double hb = cfg.hbar;
    const double m = cfg.mass;
    const double u = cfg.u;
    const double l0 = cfg.ell0;
    const double l1 = cfg.ell1;
    const double s2 = cfg.sigma0 * cfg.sigma0;
    const double k = cfg.k;
    const double npi = n * pi;

    const Complex denom = hb * l0 + 2.0 * i * m * u * s2;
    const Complex prefactor = 0.5 * i * std::pow(pi / 2.0, 0.25) * std::sqrt(cfg.sigma0 * l0 * hb / denom);
    const Complex gauss = -(i * m * u * l0 * l0 * l0 + 8.0 * npi * npi * s2 * hb + 16.0 * npi * l0 * s2 * hb * k +
                            l0 * l0 * (4.0 * i * npi * hb + 8.0 * s2 * k * (hb * k - m * u))) /
                          (8.0 * l0 * denom);
    const Complex phase_a = i * npi * l0 * hb / denom;
    const Complex phase_b = 4.0 * npi * hb * k * s2 / denom;
    const Complex scale = 4.0 * cfg.sigma0 * std::sqrt(hb * l0 * denom);

    const Complex minus_part = -2.0 * i * (2.0 * npi * hb - m * u * l1) * s2;
    const Complex plus_part = 2.0 * i * (2.0 * npi * hb + m * u * l1) * s2;
    const Complex c_minus = l0 * (hb * l1 - 2.0 * i * (2.0 * hb * k - m * u) * s2);
    const Complex c_plus = l0 * (hb * l1 + 2.0 * i * (2.0 * hb * k - m * u) * s2);

    struct Term {
        double sign;
        Complex phase;
        Complex z;
    };
    const std::array<Term, 4> terms{{
        {-1.0, phase_a, (minus_part + c_minus) / scale},
        {+1.0, phase_b, (plus_part + c_minus) / scale},
        {+1.0, phase_b, (minus_part + c_plus) / scale},
        {-1.0, phase_a, (plus_part + c_plus) / scale},
    }};

    Complex bracket{};
    for (const Term& t : terms) {
        bracket += t.sign * erf_parts(t.z).scaled(gauss + t.phase, t.z);
    }
    const Complex f = prefactor * bracket;
    if (!std::isfinite(f.real()) || !std::isfinite(f.imag())) {
        throw NumericRange("coefficient_closed_form_tgp: overflow at n=" + std::to_string(n));
    }
    return f;
}

} // namespace qwall
