#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "qwall/numerics/complex_erf.hpp"
#include "qwall/numerics/error.hpp"
#include "qwall/spectral/initial_state.hpp"
#include "qwall/spectral/physics_config.hpp"
#include "qwall/spectral/spectral_state.hpp"

namespace qwall::oracle {

/// Uniform grid in the wall-fixed coordinate y = x / l(t) and the time step.
struct GridConfig {
    int points = 2000; ///< interior nodes; spacing is 1/(points + 1)
    double dt = 1e-8;

    void validate() const {
        if (points < 100) {
            throw InvalidArgument("GridConfig: points must be >= 100");
        }
        if (!(dt > 0.0) || !std::isfinite(dt)) {
            throw InvalidArgument("GridConfig: dt must be positive");
        }
    }

    [[nodiscard]] double dy() const noexcept { return 1.0 / (points + 1); }

    bool operator==(const GridConfig&) const = default;
};

/// phi(y, t) = psi(y l(t), t) on y_j = j dy, j = 0..points+1. The two end
/// values are the Dirichlet walls and stay exactly zero.
struct GridState {
    double t = 0.0;
    std::vector<Complex> amplitudes;

    [[nodiscard]] std::size_t nodes() const noexcept { return amplitudes.size(); }
};

/// Samples psi_0 directly (not the truncated series) onto the grid.
inline GridState initial_grid(StateKind state, const PhysicsConfig& cfg, const GridConfig& grid) {
    cfg.validate();
    grid.validate();
    GridState out;
    out.amplitudes.assign(static_cast<std::size_t>(grid.points) + 2, Complex{});
    const double dy = grid.dy();
    for (int j = 1; j <= grid.points; ++j) {
        out.amplitudes[static_cast<std::size_t>(j)] = initial_amplitude(state, cfg, j * dy * cfg.ell0);
    }
    return out;
}

/// l(t) * sum |phi|^2 dy, the x-measure norm of the grid state.
inline double grid_norm(const GridState& g, const PhysicsConfig& cfg) {
    const double dy = 1.0 / static_cast<double>(g.nodes() - 1);
    double s = 0.0;
    for (const Complex& a : g.amplitudes) {
        s += std::norm(a);
    }
    return cfg.width(g.t) * s * dy;
}

namespace detail {

/// Scratch buffers reused across steps.
struct StepWorkspace {
    std::vector<Complex> upper;
    std::vector<Complex> rhs;
};

// Advances the interior values phi[1..n] in place from t to t + dt. The
// Thomas elimination is fused with the assembly of the right-hand side.
inline void step_in_place(std::vector<Complex>& phi, double t, double dt, double dy, const PhysicsConfig& cfg,
                          StepWorkspace& ws) {
    const std::size_t n = phi.size() - 2;
    ws.upper.resize(n);
    ws.rhs.resize(n);
    const double width = cfg.width(t + 0.5 * dt);
    constexpr Complex i{0.0, 1.0};

    // L chi_j = a (chi_{j+1} - 2 chi_j + chi_{j-1}) + c (y_j + y_{j+1}) chi_{j+1} - c (y_j + y_{j-1}) chi_{j-1}
    const Complex a = i * cfg.hbar / (2.0 * cfg.mass * width * width * dy * dy);
    const double c = cfg.u / (width * 4.0 * dy);
    const double half = 0.5 * dt;
    const double scale_in = std::sqrt(cfg.width(t));
    const double scale_out = 1.0 / std::sqrt(cfg.width(t + dt));
    const Complex mid = -2.0 * a;
    const Complex diag = 1.0 - half * mid;

    Complex prev_upper{};
    Complex prev_rhs{};
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t g = j + 1;
        const double y = static_cast<double>(g) * dy;
        const Complex lo = a - c * (2.0 * y - dy);
        const Complex up = a + c * (2.0 * y + dy);
        const Complex lchi = lo * phi[g - 1] + mid * phi[g] + up * phi[g + 1];
        const Complex lower = -half * lo;
        const Complex pivot = diag - lower * prev_upper;
        const double mag2 = std::norm(pivot);
        if (!(mag2 > 1e-300)) {
            throw LinearSolveError("grid step: zero pivot in tridiagonal solve");
        }
        const Complex inv = std::conj(pivot) / mag2;
        prev_upper = (-half * up) * inv;
        prev_rhs = (scale_in * (phi[g] + half * lchi) - lower * prev_rhs) * inv;
        ws.upper[j] = prev_upper;
        ws.rhs[j] = prev_rhs;
    }
    for (std::size_t j = n - 1; j-- > 0;) {
        ws.rhs[j] -= ws.upper[j] * ws.rhs[j + 1];
    }
    for (std::size_t j = 0; j < n; ++j) {
        phi[j + 1] = scale_out * ws.rhs[j];
    }
}

} // namespace detail

/// One implicit-midpoint (Crank-Nicolson) step of
///
///   i hbar phi_t = -(hbar^2 / (2 m l^2)) phi_yy + i hbar (u y / l) phi_y,
///
/// the free Schrodinger equation rewritten on y = x / l(t). The step acts on
/// chi = sqrt(l) phi, for which the drift becomes (u / l)(y chi_y + chi / 2).
/// Writing that as the centred difference of (y d + d y) / 2 gives a
/// skew-symmetric matrix, so the step preserves l sum |phi|^2 dy up to
/// rounding. l is taken at the step midpoint.
inline GridState transform_equation_step(const GridState& state, const GridConfig& grid, const PhysicsConfig& cfg) {
    if (state.amplitudes.size() != static_cast<std::size_t>(grid.points) + 2) {
        throw InvalidArgument("transform_equation_step: state size does not match the grid");
    }
    cfg.require_time(state.t + grid.dt);
    GridState out = state;
    detail::StepWorkspace ws;
    detail::step_in_place(out.amplitudes, state.t, grid.dt, grid.dy(), cfg, ws);
    out.t = state.t + grid.dt;
    return out;
}

/// Steps from state.t to exactly t_target; the last step is shortened if
/// dt does not divide the interval.
inline GridState evolve(GridState state, const GridConfig& grid, const PhysicsConfig& cfg, double t_target) {
    if (t_target < state.t) {
        throw InvalidArgument("evolve: target time precedes the state");
    }
    if (state.amplitudes.size() != static_cast<std::size_t>(grid.points) + 2) {
        throw InvalidArgument("evolve: state size does not match the grid");
    }
    cfg.require_time(t_target);
    const double t0 = state.t;
    const auto steps = static_cast<long>(std::ceil((t_target - t0) / grid.dt - 1e-9));
    detail::StepWorkspace ws;
    for (long s = 1; s <= steps; ++s) {
        const double next = (s == steps) ? t_target : t0 + static_cast<double>(s) * grid.dt;
        detail::step_in_place(state.amplitudes, state.t, next - state.t, grid.dy(), cfg, ws);
        state.t = next;
    }
    return state;
}

struct Discrepancy {
    double l2_error = 0.0;   ///< ||psi_spec - psi_grid||_2 / ||psi_spec||_2
    double linf_error = 0.0; ///< max |psi_spec - psi_grid| / max |psi_spec|
};

/// Compares the series with the grid at the grid abscissae x_j = y_j l(t).
/// Integrals are Riemann sums on the grid (end values are zero), so no
/// interpolation enters the comparison.
inline Discrepancy compare(const SpectralState& spec, const GridState& grid, double t) {
    if (std::abs(t - grid.t) > 1e-12 * std::max(1.0, std::abs(t))) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "compare: spectral time " << t << " differs from grid time " << grid.t;
        throw InvalidArgument(msg.str());
    }
    const TimeSlice slice = spec.slice(grid.t);
    const std::size_t nodes = grid.nodes();
    const double dy = 1.0 / static_cast<double>(nodes - 1);
    double diff2 = 0.0;
    double ref2 = 0.0;
    double diff_max = 0.0;
    double ref_max = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) {
        const double x = (j == nodes - 1) ? slice.width() : static_cast<double>(j) * dy * slice.width();
        const Complex ref = slice.evaluate(x).psi;
        const double d = std::abs(ref - grid.amplitudes[j]);
        diff2 += d * d;
        ref2 += std::norm(ref);
        diff_max = std::max(diff_max, d);
        ref_max = std::max(ref_max, std::abs(ref));
    }
    return {std::sqrt(diff2 / ref2), diff_max / ref_max};
}

/// Samples the series onto a grid at time t (used to compare a state with itself).
inline GridState sample_spectral(const SpectralState& spec, const GridConfig& grid, double t) {
    const TimeSlice slice = spec.slice(t);
    GridState out;
    out.t = t;
    const std::size_t nodes = static_cast<std::size_t>(grid.points) + 2;
    out.amplitudes.assign(nodes, Complex{});
    const double dy = grid.dy();
    for (std::size_t j = 1; j + 1 < nodes; ++j) {
        out.amplitudes[j] = slice.evaluate(static_cast<double>(j) * dy * slice.width()).psi;
    }
    return out;
}

/// Normalized L2 difference of a coarse grid against a finer nested grid,
/// taken on the coarse nodes. The fine spacing must be the coarse spacing
/// divided by a power of two.
inline double grid_difference(const GridState& coarse, const GridState& fine) {
    const std::size_t coarse_intervals = coarse.nodes() - 1;
    const std::size_t fine_intervals = fine.nodes() - 1;
    if (coarse_intervals == 0 || fine_intervals % coarse_intervals != 0) {
        throw InvalidArgument("grid_difference: grids are not nested");
    }
    const std::size_t stride = fine_intervals / coarse_intervals;
    if ((stride & (stride - 1)) != 0) {
        throw InvalidArgument("grid_difference: refinement is not a power of two");
    }
    if (std::abs(coarse.t - fine.t) > 1e-12 * std::max(1.0, std::abs(fine.t))) {
        throw InvalidArgument("grid_difference: grids are at different times");
    }
    double diff2 = 0.0;
    double ref2 = 0.0;
    for (std::size_t j = 0; j < coarse.nodes(); ++j) {
        const Complex ref = fine.amplitudes[j * stride];
        diff2 += std::norm(coarse.amplitudes[j] - ref);
        ref2 += std::norm(ref);
    }
    return std::sqrt(diff2 / ref2);
}

/// Below this relative difference (the tolerance the converged grid is
/// compared at) a level counts as converged to the reference, so later
/// levels need not keep the reduction rate.
inline constexpr double refinement_plateau = 1e-3;
inline constexpr double refinement_min_ratio = 3.0;

struct RefinementLevel {
    GridConfig grid;
    double l2_vs_finest = 0.0;
    double norm_drift = 0.0; ///< |norm(t) - norm(0)|
};

struct RefinementStudy {
    std::vector<RefinementLevel> levels; ///< coarse to fine, finest excluded
    GridConfig finest;
    GridState finest_state;
    double finest_norm_drift = 0.0;

    /// Each refinement cuts the error at least refinement_min_ratio times
    /// until it falls under refinement_plateau.
    [[nodiscard]] bool converged() const {
        for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
            const double e0 = levels[k].l2_vs_finest;
            const double e1 = levels[k + 1].l2_vs_finest;
            if (e0 <= refinement_plateau) {
                break;
            }
            if (!(e0 >= refinement_min_ratio * e1)) {
                return false;
            }
        }
        return !levels.empty();
    }
};

/// Runs `levels` grids (points, dt), (2 points + 1, dt/2), ... plus one
/// further level as the reference, all to time t. `base.points + 1` must be
/// even so the grids nest.
inline RefinementStudy refinement_study(StateKind state, const PhysicsConfig& cfg, const GridConfig& base, int levels,
                                        double t) {
    if (levels < 2) {
        throw InvalidArgument("refinement_study: need at least two levels");
    }
    std::vector<GridConfig> grids;
    GridConfig g = base;
    for (int k = 0; k <= levels; ++k) {
        grids.push_back(g);
        g.points = 2 * g.points + 1;
        g.dt *= 0.5;
    }
    auto run = [&](const GridConfig& gc, double& drift) {
        GridState s0 = initial_grid(state, cfg, gc);
        const double n0 = grid_norm(s0, cfg);
        GridState s1 = evolve(std::move(s0), gc, cfg, t);
        drift = std::abs(grid_norm(s1, cfg) - n0);
        return s1;
    };
    RefinementStudy out;
    out.finest = grids.back();
    out.finest_state = run(out.finest, out.finest_norm_drift);
    for (int k = 0; k < levels; ++k) {
        RefinementLevel level;
        level.grid = grids[static_cast<std::size_t>(k)];
        const GridState s = run(level.grid, level.norm_drift);
        level.l2_vs_finest = grid_difference(s, out.finest_state);
        out.levels.push_back(level);
    }
    return out;
}

} // namespace qwall::oracle
