#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qwall/bohm/trajectory.hpp"
#include "qwall/numerics/error.hpp"
#include "qwall/observables/observables.hpp"
#include "qwall/oracle/grid_solver.hpp"
#include "qwall/spectral/initial_state.hpp"
#include "qwall/spectral/physics_config.hpp"

namespace qwall::scenario {

enum class Computation { snapshot, norm, xmean, pmean, force, trajectories, bohm_center, oracle };

inline std::string_view to_string(Computation c) {
    switch (c) {
    case Computation::snapshot:
        return "snapshot";
    case Computation::norm:
        return "norm";
    case Computation::xmean:
        return "xmean";
    case Computation::pmean:
        return "pmean";
    case Computation::force:
        return "force";
    case Computation::trajectories:
        return "trajectories";
    case Computation::bohm_center:
        return "bohm-center";
    case Computation::oracle:
        return "oracle";
    }
    return "unknown";
}

inline std::optional<Computation> parse_computation(std::string_view s) {
    for (Computation c : {Computation::snapshot, Computation::norm, Computation::xmean, Computation::pmean,
                          Computation::force, Computation::trajectories, Computation::bohm_center,
                          Computation::oracle}) {
        if (s == to_string(c)) {
            return c;
        }
    }
    return std::nullopt;
}

/// static: wall at rest (u = 0); dynamic: wall moving at one of the u values.
enum class WallCase { static_wall, dynamic_wall };

inline std::string_view to_string(WallCase c) { return c == WallCase::static_wall ? "static" : "dynamic"; }

inline std::optional<WallCase> parse_wall_case(std::string_view s) {
    if (s == "static") {
        return WallCase::static_wall;
    }
    if (s == "dynamic") {
        return WallCase::dynamic_wall;
    }
    return std::nullopt;
}

struct TimeWindow {
    double t0 = 0.0;
    double t1 = 5e-4;
    int samples = 501;

    bool operator==(const TimeWindow&) const = default;
};

/// Everything a run needs. The curves are the product states x cases x u x k;
/// static curves ignore the u values.
struct Scenario {
    std::string name = "custom";
    PhysicsConfig physics{};
    std::vector<StateKind> states{StateKind::tgp};
    std::vector<WallCase> cases{WallCase::dynamic_wall};
    std::vector<double> u_values{100.0 * std::numbers::pi};
    std::vector<double> k_values{0.0};
    std::set<Computation> computations{Computation::force};
    ForceFormulation formulation = ForceFormulation::boundary;
    TimeWindow window{};
    int quad_panels = spatial_panels_default;
    double traj_dt = trajectory_dt_default;
    std::vector<double> starts{};
    int snapshot_points = 2001;
    oracle::GridConfig oracle_grid{15999, 2.5e-8};

    bool operator==(const Scenario&) const = default;
};

/// One (state, case, u, k) combination.
struct Curve {
    StateKind state = StateKind::tgp;
    WallCase wall = WallCase::dynamic_wall;
    PhysicsConfig physics{};
};

inline std::vector<Curve> curves(const Scenario& s) {
    std::vector<Curve> out;
    for (StateKind state : s.states) {
        for (WallCase wall : s.cases) {
            const std::vector<double> speeds = wall == WallCase::static_wall ? std::vector<double>{0.0} : s.u_values;
            for (double u : speeds) {
                for (double k : s.k_values) {
                    Curve c{state, wall, s.physics};
                    c.physics.u = u;
                    c.physics.k = k;
                    out.push_back(c);
                }
            }
        }
    }
    return out;
}

/// Checks the scenario without computing anything. Throws InvalidArgument or
/// DomainExpired naming the offending key.
inline void validate(const Scenario& s) {
    auto fail = [](const std::string& what) { throw InvalidArgument("scenario: " + what); };
    if (s.states.empty()) {
        fail("state must name at least one of tgp, tbs");
    }
    for (StateKind k : s.states) {
        if (k == StateKind::custom) {
            fail("state 'custom' has no closed form input and cannot be run from a scenario");
        }
    }
    if (s.cases.empty()) {
        fail("cases must list static and/or dynamic");
    }
    if (s.u_values.empty() || s.k_values.empty()) {
        fail("u and k need at least one value");
    }
    if (s.computations.empty()) {
        fail("computations is empty");
    }
    if (s.window.samples < 2) {
        fail("samples must be >= 2");
    }
    if (!(s.window.t0 >= 0.0) || !(s.window.t1 > s.window.t0)) {
        fail("need 0 <= t0 < t1");
    }
    if (s.quad_panels < 2 || s.quad_panels % 2 != 0) {
        fail("quad_panels must be even and >= 2");
    }
    if (!(s.traj_dt > 0.0)) {
        fail("traj_dt must be positive");
    }
    if (s.snapshot_points < 2) {
        fail("snapshot_points must be >= 2");
    }
    s.oracle_grid.validate();
    for (const Curve& c : curves(s)) {
        c.physics.validate();
        c.physics.require_time(s.window.t1);
    }
    if (s.computations.contains(Computation::bohm_center) &&
        std::find(s.cases.begin(), s.cases.end(), WallCase::dynamic_wall) == s.cases.end()) {
        fail("bohm-center follows the dynamic case, but cases has no dynamic entry");
    }
    const bool needs_starts = s.computations.contains(Computation::trajectories);
    if (needs_starts && s.starts.empty()) {
        fail("trajectories requested but starts is empty");
    }
    for (double x0 : s.starts) {
        if (!(x0 > 0.0 && x0 < s.physics.ell0)) {
            fail("every start must lie in (0, ell0)");
        }
    }
}

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig1-initial",      "fig2-trajectories", "fig3-xmean",
                                                "fig4-force-long",   "fig5-tbs-force-k",  "fig6-tgp-force-k",
                                                "fig7-force-u"};
    return names;
}

/// Baked parameterizations of the seven figures. Windows the figures do not
/// state are chosen from the described behaviour (0.003 for the long runs,
/// 0.0005 for the kick and speed sweeps).
inline std::optional<Scenario> preset(std::string_view name) {
    constexpr double pi = std::numbers::pi;
    Scenario s;
    s.name = std::string(name);
    s.states = {StateKind::tbs, StateKind::tgp};
    s.u_values = {100.0 * pi};
    s.k_values = {0.0};
    const PhysicsConfig& p = s.physics;
    if (name == "fig1-initial") {
        s.cases = {WallCase::dynamic_wall};
        s.computations = {Computation::snapshot, Computation::norm};
        s.window = {0.0, 5e-4, 2};
    } else if (name == "fig2-trajectories") {
        s.cases = {WallCase::static_wall, WallCase::dynamic_wall};
        s.computations = {Computation::trajectories};
        s.window = {0.0, 0.003, 301};
        s.starts = {p.xc() - 2.0 * p.sigma0, p.xc(), p.xc() + 2.0 * p.sigma0};
    } else if (name == "fig3-xmean") {
        s.cases = {WallCase::static_wall, WallCase::dynamic_wall};
        s.computations = {Computation::xmean, Computation::bohm_center};
        s.window = {0.0, 0.003, 301};
    } else if (name == "fig4-force-long") {
        s.cases = {WallCase::static_wall, WallCase::dynamic_wall};
        s.computations = {Computation::force};
        s.window = {0.0, 0.003, 601};
    } else if (name == "fig5-tbs-force-k" || name == "fig6-tgp-force-k") {
        s.states = {name == "fig5-tbs-force-k" ? StateKind::tbs : StateKind::tgp};
        s.cases = {WallCase::static_wall, WallCase::dynamic_wall};
        s.k_values = {-75.0 * pi, -50.0 * pi, -25.0 * pi, 25.0 * pi, 50.0 * pi, 75.0 * pi};
        s.computations = {Computation::force};
        s.window = {0.0, 5e-4, 501};
    } else if (name == "fig7-force-u") {
        s.cases = {WallCase::dynamic_wall};
        s.u_values = {20.0 * pi, 100.0 * pi, 200.0 * pi};
        s.computations = {Computation::force};
        s.window = {0.0, 5e-4, 501};
    } else {
        return std::nullopt;
    }
    return s;
}

} // namespace qwall::scenario
