#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <complex>
#include <optional>
#include <sstream>
#include <string_view>
#include <utility>
#include <vector>

#include "qwall/numerics/error.hpp"
#include "qwall/numerics/rk4.hpp"
#include "qwall/spectral/polar.hpp"
#include "qwall/spectral/spectral_state.hpp"

namespace qwall {

/// Guidance velocity v = (hbar/m) Im(psi* psi') / |psi|^2 on a fixed slice.
/// The node floor is node_floor_ratio times the slice's modulus bound.
inline double velocity(const TimeSlice& slice, double x) {
    const WaveSample s = slice.evaluate(x);
    const PhysicsConfig& cfg = slice.config();
    const double rho = std::norm(s.psi);
    const double floor = node_floor_ratio * slice.modulus_bound();
    if (!(std::sqrt(rho) > floor)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "velocity: node at x=" << x << ", t=" << slice.t();
        throw NodeSingularity(x, slice.t(), msg.str());
    }
    return cfg.hbar / cfg.mass * (std::conj(s.psi) * s.dpsi).imag() / rho;
}

inline double velocity(const SpectralState& spec, double x, double t) { return velocity(spec.slice(t), x); }

enum class TrajectoryStatus { completed, node_aborted, wall_clamped };

inline std::string_view to_string(TrajectoryStatus s) {
    switch (s) {
    case TrajectoryStatus::completed:
        return "completed";
    case TrajectoryStatus::node_aborted:
        return "node-aborted";
    case TrajectoryStatus::wall_clamped:
        return "wall-clamped";
    }
    return "unknown";
}

/// One Bohmian path. Every sample satisfies 0 < x < l(t).
struct Trajectory {
    double x0 = 0.0;
    std::vector<double> times;
    std::vector<double> positions;
    TrajectoryStatus status = TrajectoryStatus::completed;

    [[nodiscard]] std::size_t size() const noexcept { return times.size(); }

    /// Linear interpolation of x at time t within the sampled range.
    [[nodiscard]] double position_at(double t) const {
        if (times.empty() || t < times.front() || t > times.back()) {
            throw InvalidArgument("Trajectory::position_at: t outside the sampled range");
        }
        auto it = std::lower_bound(times.begin(), times.end(), t);
        const auto j = static_cast<std::size_t>(it - times.begin());
        if (times[j] == t || j == 0) {
            return positions[j];
        }
        const double w = (t - times[j - 1]) / (times[j] - times[j - 1]);
        return positions[j - 1] + w * (positions[j] - positions[j - 1]);
    }
};

/// Reference time step for trajectories over windows up to t = 0.003.
inline constexpr double trajectory_dt_default = 1e-7;

namespace detail {

/// Keeps the slices of the last few stage times; a step touches t, t+h/2, t+h
/// and the next step starts at t+h.
class SliceCache {
public:
    explicit SliceCache(const SpectralState& spec) : spec_(spec) {}

    const TimeSlice& at(double t) {
        for (auto& e : entries_) {
            if (e && e->first == t) {
                return e->second;
            }
        }
        auto& slot = entries_[next_];
        next_ = (next_ + 1) % entries_.size();
        slot.emplace(t, spec_.slice(t));
        return slot->second;
    }

private:
    const SpectralState& spec_;
    std::array<std::optional<std::pair<double, TimeSlice>>, 4> entries_{};
    std::size_t next_ = 0;
};

} // namespace detail

/// RK4 integration of dx/dt = v(x, t) from x0 at t = 0 to t_end.
///
/// A step that would leave (0, l(t)) is retried with the step halved, down to
/// dt/64; if that still fails the path stops as wall_clamped. Hitting a node
/// stops it as node_aborted.
inline Trajectory integrate_trajectory(const SpectralState& spec, double x0, double t_end,
                                       double dt = trajectory_dt_default) {
    const PhysicsConfig& cfg = spec.config();
    if (!(x0 > 0.0 && x0 < cfg.ell0)) {
        throw InvalidArgument("integrate_trajectory: x0 must lie in (0, l0)");
    }
    if (!(dt > 0.0)) {
        throw InvalidArgument("integrate_trajectory: dt must be positive");
    }
    if (!(t_end >= 0.0)) {
        throw InvalidArgument("integrate_trajectory: t_end must be non-negative");
    }
    cfg.require_time(t_end);

    detail::SliceCache cache(spec);
    auto field = [&](double t, double x) {
        const TimeSlice& s = cache.at(t);
        if (!(x > 0.0 && x < s.width())) {
            // Stage point outside the box: report as non-finite so the step is retried.
            return std::numeric_limits<double>::quiet_NaN();
        }
        return velocity(s, x);
    };

    Trajectory out;
    out.x0 = x0;
    out.times.push_back(0.0);
    out.positions.push_back(x0);
    // Integer step counter keeps the time grid free of accumulated rounding.
    const auto steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));
    double t = 0.0;
    double x = x0;
    for (long i = 1; i <= steps; ++i) {
        const double target = (i == steps) ? t_end : static_cast<double>(i) * dt;
        bool advanced = false;
        try {
            // Sub-steps of size (target - t) / 2^level, retried on wall exit.
            for (int level = 0; level <= 6 && !advanced; ++level) {
                const int pieces = 1 << level;
                const double h = (target - t) / pieces;
                double tt = t;
                double xx = x;
                bool ok = true;
                for (int p = 0; p < pieces; ++p) {
                    double next = 0.0;
                    try {
                        next = rk4_step(field, tt, xx, h);
                    } catch (const SingularityError& e) {
                        // Distinguish a node from a stage that left the box.
                        const TimeSlice& s = cache.at(e.t());
                        if (e.x() > 0.0 && e.x() < s.width()) {
                            throw;
                        }
                        ok = false;
                        break;
                    }
                    tt = (p == pieces - 1) ? target : tt + h;
                    if (!(next > 0.0 && next < cfg.width(tt))) {
                        ok = false;
                        break;
                    }
                    xx = next;
                }
                if (ok) {
                    x = xx;
                    advanced = true;
                }
            }
        } catch (const NodeSingularity&) {
            out.status = TrajectoryStatus::node_aborted;
            return out;
        } catch (const SingularityError&) {
            out.status = TrajectoryStatus::node_aborted;
            return out;
        }
        if (!advanced) {
            out.status = TrajectoryStatus::wall_clamped;
            return out;
        }
        t = target;
        out.times.push_back(t);
        out.positions.push_back(x);
    }
    return out;
}

/// Starting points and integration window for a batch of trajectories.
struct EnsembleSpec {
    std::vector<double> starts;
    double t_end = 0.0;
    double dt = trajectory_dt_default;
};

/// Independent integrations in the order of `starts`. Per-path failures are
/// reported through the status of that path; invalid starts still throw.
inline std::vector<Trajectory> ensemble(const SpectralState& spec, const EnsembleSpec& es) {
    for (double x0 : es.starts) {
        if (!(x0 > 0.0 && x0 < spec.config().ell0)) {
            throw InvalidArgument("ensemble: start outside (0, l0)");
        }
    }
    std::vector<Trajectory> out;
    out.reserve(es.starts.size());
    for (double x0 : es.starts) {
        out.push_back(integrate_trajectory(spec, x0, es.t_end, es.dt));
    }
    return out;
}

} // namespace qwall
