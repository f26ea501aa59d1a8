#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qwall/numerics/error.hpp"
#include "qwall/numerics/quadrature.hpp"
#include "qwall/numerics/time_series.hpp"
#include "qwall/spectral/polar.hpp"
#include "qwall/spectral/spectral_state.hpp"

namespace qwall {

/// Largest |Re int psi* psi' dx| tolerated, relative to max(1, hbar |int psi* psi'|).
/// Analytically that real part is [|psi|^2/2] between the walls, i.e. zero.
inline constexpr double momentum_residual_tolerance = 1e-8;

/// One Simpson pass over [0, l(t)] collecting the integrals behind norm, <x>, <p>.
struct Moments {
    double t = 0.0;
    double norm = 0.0;
    double x_raw = 0.0;  ///< int x |psi|^2
    double p_raw = 0.0;  ///< hbar Im int psi* psi'
    double p_residual = 0.0; ///< -hbar Re int psi* psi', imaginary part of int psi* (hbar/i) psi'

    [[nodiscard]] double x_mean() const { return x_raw / norm; }
    [[nodiscard]] double p_mean() const { return p_raw / norm; }
};

inline Moments moments(const TimeSlice& slice, QuadratureSpec q = QuadratureSpec(spatial_panels_default)) {
    const int panels = q.panels();
    const double h = slice.width() / panels;
    double n0 = 0.0;
    double x1 = 0.0;
    Complex cross{};
    for (int j = 0; j <= panels; ++j) {
        const double x = (j == panels) ? slice.width() : j * h;
        const WaveSample s = slice.evaluate(x);
        const double w = simpson_weight(j, panels, h);
        const double rho = std::norm(s.psi);
        n0 += w * rho;
        x1 += w * x * rho;
        cross += w * std::conj(s.psi) * s.dpsi;
    }
    const double hbar = slice.config().hbar;
    return {slice.t(), n0, x1, hbar * cross.imag(), -hbar * cross.real()};
}

inline Moments moments(const SpectralState& spec, double t, QuadratureSpec q = QuadratureSpec(spatial_panels_default)) {
    return moments(spec.slice(t), q);
}

/// int_0^l(t) |psi|^2 dx.
inline double norm(const SpectralState& spec, double t, QuadratureSpec q = QuadratureSpec(spatial_panels_default)) {
    return moments(spec, t, q).norm;
}

/// <x> normalized by norm(t).
inline double x_expectation(const SpectralState& spec, double t,
                            QuadratureSpec q = QuadratureSpec(spatial_panels_default)) {
    return moments(spec, t, q).x_mean();
}

/// int x |psi|^2 without normalization.
inline double x_expectation_raw(const SpectralState& spec, double t,
                                QuadratureSpec q = QuadratureSpec(spatial_panels_default)) {
    return moments(spec, t, q).x_raw;
}

namespace detail {

inline void check_momentum_residual(const Moments& m) {
    const double scale = std::max(1.0, std::abs(m.p_raw));
    if (std::abs(m.p_residual) > momentum_residual_tolerance * scale) {
        std::ostringstream msg;
        msg.precision(6);
        msg << "p_expectation: imaginary residual " << m.p_residual << " exceeds tolerance at t=" << m.t;
        throw NumericConsistency(msg.str());
    }
}

} // namespace detail

/// <p> = Re int psi* (hbar/i) psi' dx / norm(t). Throws NumericConsistency
/// when the imaginary part of the integral is not negligible.
inline double p_expectation(const SpectralState& spec, double t,
                            QuadratureSpec q = QuadratureSpec(spatial_panels_default)) {
    const Moments m = moments(spec, t, q);
    detail::check_momentum_residual(m);
    return m.p_mean();
}

/// Unnormalized <p>; the quantity whose time derivative is the wall force.
inline double p_expectation_raw(const SpectralState& spec, double t,
                                QuadratureSpec q = QuadratureSpec(spatial_panels_default)) {
    const Moments m = moments(spec, t, q);
    detail::check_momentum_residual(m);
    return m.p_raw;
}

/// Node floor at time t: node_floor_ratio times max |psi| on the Simpson grid.
inline double node_floor(const TimeSlice& slice, QuadratureSpec q = QuadratureSpec(spatial_panels_default)) {
    return node_floor_ratio * slice.max_modulus(q);
}

/// Q = -(hbar^2 / 2m) R'' / R.
inline double quantum_potential(const SpectralState& spec, double x, double t,
                                QuadratureSpec q = QuadratureSpec(spatial_panels_default)) {
    const TimeSlice slice = spec.slice(t);
    const PhysicsConfig& cfg = spec.config();
    const PolarFields p = polar_fields(slice.evaluate(x), cfg.hbar, node_floor(slice, q));
    return -(cfg.hbar * cfg.hbar / (2.0 * cfg.mass)) * p.d2R / p.R;
}

enum class ForceFormulation { boundary, general_bohm, general_qm };

inline std::string_view to_string(ForceFormulation f) {
    switch (f) {
    case ForceFormulation::boundary:
        return "boundary";
    case ForceFormulation::general_bohm:
        return "general-bohm";
    case ForceFormulation::general_qm:
        return "general-qm";
    }
    return "unknown";
}

inline std::optional<ForceFormulation> parse_force_formulation(std::string_view s) {
    if (s == "boundary") return ForceFormulation::boundary;
    if (s == "general-bohm") return ForceFormulation::general_bohm;
    if (s == "general-qm") return ForceFormulation::general_qm;
    return std::nullopt;
}

/// f_qm = -(hbar^2/2m) (|psi'(l)|^2 - |psi'(0)|^2) with wall slopes from the series.
inline double force_boundary(const TimeSlice& slice) {
    const auto [left, right] = slice.walls();
    const PhysicsConfig& cfg = slice.config();
    return -(cfg.hbar * cfg.hbar / (2.0 * cfg.mass)) * (std::norm(right.dpsi) - std::norm(left.dpsi));
}

inline double force_boundary(const SpectralState& spec, double t) { return force_boundary(spec.slice(t)); }

/// Polar products that enter the Bohmian wall force. When |psi| is at or below
/// the floor the limits along a simple zero are used:
///   R^2 S' -> 0, R S' -> 0, R R'' -> 0, R'^2 -> |psi'|^2.
struct WallPolarProducts {
    double r2_ds = 0.0;
    double r_ds = 0.0;
    double r_d2r = 0.0;
    double dr_sq = 0.0;
};

inline WallPolarProducts wall_polar_products(const WaveSample& s, double hbar, double floor) {
    WallPolarProducts p;
    const double r = std::abs(s.psi);
    if (r > floor) {
        const Complex cross = std::conj(s.psi) * s.dpsi;
        p.r2_ds = hbar * cross.imag();
        p.r_ds = hbar * cross.imag() / r;
        p.dr_sq = (cross.real() / r) * (cross.real() / r);
        p.r_d2r = std::norm(s.dpsi) + (std::conj(s.psi) * s.d2psi).real() - p.dr_sq;
    } else {
        p.dr_sq = std::norm(s.dpsi);
    }
    if (!std::isfinite(p.r2_ds) || !std::isfinite(p.r_ds) || !std::isfinite(p.r_d2r) || !std::isfinite(p.dr_sq)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "wall_polar_products: non-finite boundary limit at x=" << s.x << ", t=" << s.t;
        throw NumericConsistency(msg.str());
    }
    return p;
}

/// Force from the Bohmian balance,
///   l'(t) (R^2 S')|_l + [ (hbar^2/2m)(R R'' - R'^2) - (1/m)(R S')^2 ]_0^l,
/// applied to arbitrary wall samples.
inline double force_general_bohm(const WaveSample& left, const WaveSample& right, const PhysicsConfig& cfg,
                                 double floor) {
    const double c = cfg.hbar * cfg.hbar / (2.0 * cfg.mass);
    const WallPolarProducts a = wall_polar_products(left, cfg.hbar, floor);
    const WallPolarProducts b = wall_polar_products(right, cfg.hbar, floor);
    auto bracket = [&](const WallPolarProducts& p) { return c * (p.r_d2r - p.dr_sq) - p.r_ds * p.r_ds / cfg.mass; };
    return cfg.u * b.r2_ds + bracket(b) - bracket(a);
}

/// Force from the operator route,
///   hbar l'(t) Im(psi* psi')|_l + (hbar^2/2m) [Re(psi* psi'') - |psi'|^2]_0^l.
inline double force_general_qm(const WaveSample& left, const WaveSample& right, const PhysicsConfig& cfg) {
    const double c = cfg.hbar * cfg.hbar / (2.0 * cfg.mass);
    auto bracket = [&](const WaveSample& s) { return (std::conj(s.psi) * s.d2psi).real() - std::norm(s.dpsi); };
    const double flux = (std::conj(right.psi) * right.dpsi).imag();
    const double out = cfg.hbar * cfg.u * flux + c * (bracket(right) - bracket(left));
    if (!std::isfinite(out)) {
        throw NumericConsistency("force_general_qm: non-finite wall values");
    }
    return out;
}

inline double force_general_bohm(const TimeSlice& slice) {
    const auto [left, right] = slice.walls();
    return force_general_bohm(left, right, slice.config(), node_floor_ratio * slice.modulus_bound());
}

inline double force_general_qm(const TimeSlice& slice) {
    const auto [left, right] = slice.walls();
    return force_general_qm(left, right, slice.config());
}

inline double force_general_bohm(const SpectralState& spec, double t) { return force_general_bohm(spec.slice(t)); }
inline double force_general_qm(const SpectralState& spec, double t) { return force_general_qm(spec.slice(t)); }

inline double force(const TimeSlice& slice, ForceFormulation f) {
    switch (f) {
    case ForceFormulation::boundary:
        return force_boundary(slice);
    case ForceFormulation::general_bohm:
        return force_general_bohm(slice);
    case ForceFormulation::general_qm:
        return force_general_qm(slice);
    }
    throw InvalidArgument("force: unknown formulation");
}

inline double force(const SpectralState& spec, double t, ForceFormulation f) { return force(spec.slice(t), f); }

/// samples >= 2 evenly spaced times from t0 to t1 inclusive.
inline std::vector<double> uniform_times(double t0, double t1, int samples) {
    if (samples < 2) {
        throw InvalidArgument("uniform_times: need at least 2 samples");
    }
    if (!(t1 > t0)) {
        throw InvalidArgument("uniform_times: t1 must exceed t0");
    }
    std::vector<double> out(static_cast<std::size_t>(samples));
    const double dt = (t1 - t0) / (samples - 1);
    for (int i = 0; i < samples; ++i) {
        out[static_cast<std::size_t>(i)] = (i == samples - 1) ? t1 : t0 + i * dt;
    }
    return out;
}

inline TimeSeries force_series(const SpectralState& spec, const std::vector<double>& times,
                               ForceFormulation f = ForceFormulation::boundary) {
    std::vector<double> values;
    values.reserve(times.size());
    for (double t : times) {
        values.push_back(force(spec, t, f));
    }
    return TimeSeries(times, std::move(values));
}

/// <p>(t) = p0 + int_0^t f_qm dt' on the grid of `force_values`.
inline TimeSeries momentum_from_force(const TimeSeries& force_values, double p0) {
    const CumulativeResult acc = cumulative_integral(force_values);
    std::vector<double> values = acc.series.values();
    for (double& v : values) {
        v += p0;
    }
    return TimeSeries(acc.series.times(), std::move(values));
}

/// Default relative threshold for deviation_onset.
inline constexpr double onset_fraction_default = 0.05;

/// First time at which |dynamic - reference| exceeds `fraction` of the peak
/// |dynamic| over the window. Both series must share a time grid.
inline std::optional<double> deviation_onset(const TimeSeries& dynamic, const TimeSeries& reference,
                                             double fraction = onset_fraction_default) {
    if (dynamic.times() != reference.times()) {
        throw InvalidArgument("deviation_onset: series must share a time grid");
    }
    double peak = 0.0;
    for (double v : dynamic.values()) {
        peak = std::max(peak, std::abs(v));
    }
    const double threshold = fraction * peak;
    for (std::size_t i = 0; i < dynamic.size(); ++i) {
        if (std::abs(dynamic.value(i) - reference.value(i)) > threshold) {
            return dynamic.time(i);
        }
    }
    return std::nullopt;
}

} // namespace qwall
