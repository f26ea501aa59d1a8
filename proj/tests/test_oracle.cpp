#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include <gtest/gtest.h>

#include "qwall/oracle/grid_solver.hpp"

using namespace qwall;
using namespace qwall::oracle;
constexpr double pi = std::numbers::pi;

namespace {

SpectralState low_mode_state(double u) {
    PhysicsConfig c;
    c.u = u;
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<Complex> f(4);
    for (auto& v : f) {
        v = {d(rng), d(rng)};
    }
    return SpectralState::from_coefficients(c, f);
}

} // namespace

TEST(GridConfig, Validates) {
    EXPECT_THROW((GridConfig{50, 1e-8}.validate()), InvalidArgument);
    EXPECT_THROW((GridConfig{1000, 0.0}.validate()), InvalidArgument);
    EXPECT_NO_THROW((GridConfig{1000, 1e-8}.validate()));
    EXPECT_DOUBLE_EQ((GridConfig{999, 1e-8}.dy()), 1e-3);
}

TEST(Grid, InitialNormMatchesTheState) {
    PhysicsConfig c;
    const GridConfig g{15999, 1e-8};
    EXPECT_NEAR(grid_norm(initial_grid(StateKind::tbs, c, g), c), 1.0, 1e-3);
    EXPECT_NEAR(grid_norm(initial_grid(StateKind::tgp, c, g), c), initial_norm(StateKind::tgp, c), 1e-3);
}

TEST(Grid, ZeroStaysZero) {
    PhysicsConfig c;
    const GridConfig g{200, 1e-6};
    GridState s;
    s.amplitudes.assign(202, Complex{});
    s = evolve(std::move(s), g, c, 1e-4);
    for (const Complex& a : s.amplitudes) {
        EXPECT_EQ(a, Complex{});
    }
}

TEST(Grid, StepIsUnitaryAndWallsStayZero) {
    PhysicsConfig c;
    const GridConfig g{3999, 5e-8};
    GridState s = initial_grid(StateKind::tgp, c, g);
    const double n0 = grid_norm(s, c);
    s = evolve(std::move(s), g, c, 2e-4);
    EXPECT_NEAR(grid_norm(s, c), n0, 1e-12);
    EXPECT_EQ(s.amplitudes.front(), Complex{});
    EXPECT_EQ(s.amplitudes.back(), Complex{});
    EXPECT_DOUBLE_EQ(s.t, 2e-4);
}

TEST(Grid, StaticEigenstateOnlyPicksUpItsPhase) {
    PhysicsConfig c;
    c.u = 0.0;
    const SpectralState spec = SpectralState::from_coefficients(c, {Complex(1.0)});
    const GridConfig g{1999, 1e-7};
    GridState s = sample_spectral(spec, g, 0.0);
    s = evolve(std::move(s), g, c, 1e-3);
    const Discrepancy d = compare(spec, s, 1e-3);
    EXPECT_LT(d.l2_error, 1e-6);
    EXPECT_LT(d.linf_error, 1e-6);
}

// The moving-wall chirp exp(i m u x^2 / 2 hbar l) carries wavenumbers up to
// m u / hbar, so the dispersion error grows quickly with u.
TEST(Grid, AgreesWithTheSeriesForASmoothState) {
    for (auto [u, tol] : {std::pair{100.0 * pi, 1e-3}, std::pair{-20.0 * pi, 1e-5}}) {
        const SpectralState spec = low_mode_state(u);
        const GridConfig g{3999, 5e-8};
        GridState s = sample_spectral(spec, g, 0.0);
        s = evolve(std::move(s), g, spec.config(), 2.5e-4);
        EXPECT_LT(compare(spec, s, 2.5e-4).l2_error, tol) << "u = " << u;
    }
}

TEST(Grid, SecondOrderInSpaceAndTime) {
    const SpectralState spec = low_mode_state(100.0 * pi);
    auto error = [&](int points, double dt) {
        const GridConfig g{points, dt};
        GridState s = sample_spectral(spec, g, 0.0);
        s = evolve(std::move(s), g, spec.config(), 2.5e-4);
        return compare(spec, s, 2.5e-4).l2_error;
    };
    const double e1 = error(799, 4e-7);
    const double e2 = error(1599, 2e-7);
    EXPECT_NEAR(e1 / e2, 4.0, 0.4);
}

TEST(Compare, SeriesAgainstItselfIsZero) {
    const SpectralState spec = low_mode_state(100.0 * pi);
    const GridState s = sample_spectral(spec, GridConfig{999, 1e-8}, 3e-4);
    const Discrepancy d = compare(spec, s, 3e-4);
    EXPECT_LT(d.l2_error, 1e-14);
    EXPECT_LT(d.linf_error, 1e-14);
    EXPECT_THROW(compare(spec, s, 4e-4), InvalidArgument);
}

TEST(Evolve, RejectsMismatchedInput) {
    PhysicsConfig c;
    const GridConfig g{999, 1e-7};
    GridState s = initial_grid(StateKind::tbs, c, g);
    EXPECT_THROW(evolve(s, GridConfig{1999, 1e-7}, c, 1e-4), InvalidArgument);
    s.t = 2e-4;
    EXPECT_THROW(evolve(s, g, c, 1e-4), InvalidArgument);
    PhysicsConfig shrinking = c;
    shrinking.u = -100.0;
    EXPECT_THROW(evolve(initial_grid(StateKind::tbs, shrinking, g), g, shrinking, 0.1), DomainExpired);
}

TEST(GridDifference, NeedsNestedGrids) {
    PhysicsConfig c;
    const GridState a = initial_grid(StateKind::tgp, c, GridConfig{999, 1e-7});
    const GridState b = initial_grid(StateKind::tgp, c, GridConfig{1999, 1e-7});
    const GridState d = initial_grid(StateKind::tgp, c, GridConfig{2999, 1e-7});
    const GridState e = initial_grid(StateKind::tgp, c, GridConfig{1499, 1e-7});
    EXPECT_NEAR(grid_difference(a, b), 0.0, 1e-15);
    EXPECT_THROW(grid_difference(a, d), InvalidArgument);
    EXPECT_THROW(grid_difference(a, e), InvalidArgument);
    GridState late = b;
    late.t = 1e-4;
    EXPECT_THROW(grid_difference(a, late), InvalidArgument);
}

TEST(Refinement, SmoothPacketConvergesAtSecondOrder) {
    PhysicsConfig c;
    c.ell1 = 0.1;
    const RefinementStudy r = refinement_study(StateKind::tgp, c, GridConfig{999, 4e-7}, 3, 2e-4);
    ASSERT_EQ(r.levels.size(), 3u);
    EXPECT_EQ(r.finest.points, 7999);
    for (std::size_t k = 0; k + 1 < r.levels.size(); ++k) {
        EXPECT_GT(r.levels[k].l2_vs_finest / r.levels[k + 1].l2_vs_finest, 3.0);
    }
    EXPECT_TRUE(r.converged());
    EXPECT_LT(r.finest_norm_drift, 1e-12);
    EXPECT_THROW(refinement_study(StateKind::tgp, c, GridConfig{999, 4e-7}, 1, 2e-4), InvalidArgument);
}

TEST(Refinement, ConvergedRule) {
    RefinementStudy r;
    EXPECT_FALSE(r.converged());
    r.levels = {{{}, 1e-2, 0.0}, {{}, 2e-3, 0.0}, {{}, 5e-4, 0.0}, {{}, 4e-4, 0.0}};
    EXPECT_TRUE(r.converged());
    r.levels[1].l2_vs_finest = 5e-3;
    EXPECT_FALSE(r.converged());
}
