#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qwall/bohm/trajectory.hpp"
#include "qwall/observables/observables.hpp"
#include "qwall/spectral/polar.hpp"
#include "qwall/spectral/spectral_state.hpp"

using namespace qwall;
constexpr double pi = std::numbers::pi;

namespace {

SpectralState make(StateKind kind, double u, double k = 0.0) {
    PhysicsConfig c;
    c.u = u;
    c.k = k;
    return build_spectrum(kind, c, CoefficientMethod::quadrature);
}

} // namespace

TEST(Velocity, EqualsPhaseGradientOverMass) {
    const SpectralState s = make(StateKind::tgp, 100.0 * pi, -25.0 * pi);
    const TimeSlice slice = s.slice(2e-4);
    for (double x : {0.49, 0.5, 0.515}) {
        const PolarFields p = polar_fields(slice.evaluate(x), 1.0, 0.0);
        EXPECT_NEAR(velocity(slice, x), p.dS / s.config().mass, 1e-9 * std::abs(p.dS / s.config().mass) + 1e-9);
    }
}

TEST(Velocity, InitialVelocityIsTheKick) {
    const SpectralState s = make(StateKind::tbs, 100.0 * pi, 25.0 * pi);
    const double expect = s.config().hbar * s.config().k / s.config().mass;
    EXPECT_NEAR(velocity(s, 0.5, 0.0), expect, 1e-6 * expect);
}

TEST(Velocity, NodeRaises) {
    PhysicsConfig c;
    c.u = 0.0;
    std::vector<Complex> f(2);
    f[1] = std::sqrt(0.5);
    const SpectralState s = SpectralState::from_coefficients(c, f);
    EXPECT_THROW(velocity(s, 0.5, 0.01), NodeSingularity);
    EXPECT_NEAR(velocity(s, 0.3, 0.01), 0.0, 1e-12);
}

TEST(Trajectory, StaticCentralPathStaysAtCentre) {
    for (StateKind kind : {StateKind::tbs, StateKind::tgp}) {
        const SpectralState s = make(kind, 0.0);
        const Trajectory tr = integrate_trajectory(s, 0.5, 5e-4);
        EXPECT_EQ(tr.status, TrajectoryStatus::completed);
        for (double x : tr.positions) {
            EXPECT_NEAR(x, 0.5, 1e-10);
        }
    }
}

TEST(Trajectory, StationaryStateDoesNotMove) {
    PhysicsConfig c;
    c.u = 0.0;
    std::vector<Complex> f(3);
    f[2] = std::sqrt(0.5);
    const SpectralState s = SpectralState::from_coefficients(c, f);
    const Trajectory tr = integrate_trajectory(s, 0.2, 1e-3, 1e-5);
    EXPECT_EQ(tr.status, TrajectoryStatus::completed);
    EXPECT_NEAR(tr.positions.back(), 0.2, 1e-12);
}

TEST(Trajectory, StartingOnANodeAborts) {
    PhysicsConfig c;
    c.u = 0.0;
    std::vector<Complex> f(2);
    f[1] = std::sqrt(0.5);
    const SpectralState s = SpectralState::from_coefficients(c, f);
    const Trajectory tr = integrate_trajectory(s, 0.5, 1e-3, 1e-5);
    EXPECT_EQ(tr.status, TrajectoryStatus::node_aborted);
    EXPECT_EQ(tr.size(), 1u);
}

TEST(Trajectory, ConvergesInTheStep) {
    const SpectralState s = make(StateKind::tgp, 100.0 * pi);
    const double x0 = 0.51;
    const Trajectory a = integrate_trajectory(s, x0, 5e-4, 1e-7);
    const Trajectory b = integrate_trajectory(s, x0, 5e-4, 2e-7);
    EXPECT_NEAR(a.positions.back(), b.positions.back(), 1e-7);
}

TEST(Trajectory, StaysInsideTheBoxAndKeepsOrder) {
    const SpectralState s = make(StateKind::tbs, 100.0 * pi);
    const PhysicsConfig& c = s.config();
    const auto paths = ensemble(s, {{0.49, 0.5, 0.51}, 1e-3, 1e-7});
    ASSERT_EQ(paths.size(), 3u);
    for (const auto& p : paths) {
        EXPECT_EQ(p.status, TrajectoryStatus::completed);
        for (std::size_t i = 0; i < p.size(); ++i) {
            EXPECT_GT(p.positions[i], 0.0);
            EXPECT_LT(p.positions[i], c.width(p.times[i]));
        }
    }
    for (std::size_t i = 0; i < paths[0].size(); ++i) {
        EXPECT_LT(paths[0].positions[i], paths[1].positions[i]);
        EXPECT_LT(paths[1].positions[i], paths[2].positions[i]);
    }
}

TEST(Trajectory, PositionAtInterpolates) {
    Trajectory tr;
    tr.times = {0.0, 1.0, 2.0};
    tr.positions = {0.1, 0.3, 0.2};
    EXPECT_DOUBLE_EQ(tr.position_at(0.5), 0.2);
    EXPECT_DOUBLE_EQ(tr.position_at(2.0), 0.2);
    EXPECT_THROW(static_cast<void>(tr.position_at(2.5)), InvalidArgument);
}

TEST(Trajectory, StaticPathFollowsTheMeanPosition) {
    const SpectralState s = make(StateKind::tgp, 0.0);
    const double x0 = x_expectation(s, 0.0);
    const Trajectory tr = integrate_trajectory(s, x0, 1e-3);
    EXPECT_NEAR(tr.positions.back(), x_expectation(s, 1e-3), 1e-4);
}

TEST(Trajectory, RejectsBadInput) {
    const SpectralState s = make(StateKind::tbs, 100.0 * pi);
    EXPECT_THROW(integrate_trajectory(s, 0.0, 1e-4), InvalidArgument);
    EXPECT_THROW(integrate_trajectory(s, 1.2, 1e-4), InvalidArgument);
    EXPECT_THROW(integrate_trajectory(s, 0.5, 1e-4, 0.0), InvalidArgument);
    EXPECT_THROW(integrate_trajectory(s, 0.5, -1e-4), InvalidArgument);
    EXPECT_THROW(ensemble(s, {{0.5, 1.5}, 1e-4, 1e-7}), InvalidArgument);
    EXPECT_EQ(to_string(TrajectoryStatus::wall_clamped), "wall-clamped");
}
