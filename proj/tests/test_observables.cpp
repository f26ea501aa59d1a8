#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qwall/observables/observables.hpp"
#include "qwall/spectral/spectral_state.hpp"

using namespace qwall;
constexpr double pi = std::numbers::pi;

namespace {

SpectralState make(StateKind kind, double u, double k) {
    PhysicsConfig c;
    c.u = u;
    c.k = k;
    return build_spectrum(kind, c, CoefficientMethod::quadrature);
}

} // namespace

TEST(Norm, EqualsParsevalSumAtLaterTimes) {
    for (StateKind kind : {StateKind::tbs, StateKind::tgp}) {
        const SpectralState s = make(kind, 100.0 * pi, 25.0 * pi);
        for (double t : {0.0, 5e-4, 3e-3}) {
            EXPECT_NEAR(norm(s, t), s.parseval_sum(), 1e-12) << to_string(kind) << " t=" << t;
        }
    }
}

TEST(Moments, StaticMotionlessStatesStayCentred) {
    for (StateKind kind : {StateKind::tbs, StateKind::tgp}) {
        const SpectralState s = make(kind, 0.0, 0.0);
        for (double t : {1e-3, 3e-3}) {
            EXPECT_NEAR(x_expectation(s, t), 0.5, 1e-10);
            EXPECT_NEAR(p_expectation(s, t), 0.0, 1e-8);
        }
    }
}

TEST(Moments, InitialMomentumIsTheKick) {
    const double k = 25.0 * pi;
    const SpectralState tbs = make(StateKind::tbs, 100.0 * pi, k);
    EXPECT_NEAR(p_expectation(tbs, 0.0), k, 1e-9 * k);
    const SpectralState tgp = make(StateKind::tgp, 100.0 * pi, k);
    EXPECT_NEAR(p_expectation_raw(tgp, 0.0), k * tgp.parseval_sum(), 1e-9 * k);
}

TEST(Moments, RawAndNormalizedDifferByTheNorm) {
    const SpectralState s = make(StateKind::tgp, 100.0 * pi, 0.0);
    const Moments m = moments(s, 1e-3);
    EXPECT_DOUBLE_EQ(x_expectation_raw(s, 1e-3), m.x_raw);
    EXPECT_DOUBLE_EQ(m.x_mean(), m.x_raw / m.norm);
    EXPECT_NEAR(x_expectation(s, 0.0), 0.5, 1e-12);
    EXPECT_NEAR(x_expectation_raw(s, 0.0), 0.5 * std::erf(5.0 / std::numbers::sqrt2), 2e-7);
}

TEST(Moments, CoarseQuadratureTripsTheMomentumResidualCheck) {
    const SpectralState s = make(StateKind::tbs, 100.0 * pi, 0.0);
    EXPECT_THROW(p_expectation(s, 1e-3, QuadratureSpec(200)), NumericConsistency);
    EXPECT_NO_THROW(p_expectation(s, 1e-3));
}

TEST(Force, StaticMotionlessForceVanishes) {
    for (StateKind kind : {StateKind::tbs, StateKind::tgp}) {
        const SpectralState s = make(kind, 0.0, 0.0);
        for (double t : {1e-4, 1e-3, 3e-3}) {
            EXPECT_NEAR(force_boundary(s, t), 0.0, 1e-8);
        }
    }
}

TEST(Force, ThreeFormulationsAgree) {
    for (StateKind kind : {StateKind::tbs, StateKind::tgp}) {
        for (double k : {0.0, -25.0 * pi, 50.0 * pi}) {
            const SpectralState s = make(kind, 100.0 * pi, k);
            for (double t : {0.0, 2e-4, 1e-3, 3e-3}) {
                const double a = force_boundary(s, t);
                const double b = force_general_bohm(s, t);
                const double c = force_general_qm(s, t);
                const double scale = std::max(std::abs(a), 1.0);
                EXPECT_NEAR(b, a, 1e-8 * scale);
                EXPECT_NEAR(c, a, 1e-8 * scale);
            }
        }
    }
}

TEST(Force, GeneralFormulasHandleNonzeroWallValues) {
    // Away from the walls the general formulas still evaluate; the Bohm and
    // operator routes agree on the same samples.
    const SpectralState s = make(StateKind::tgp, 100.0 * pi, 0.0);
    const TimeSlice slice = s.slice(1e-3);
    const WaveSample a = slice.evaluate(0.48);
    const WaveSample b = slice.evaluate(0.52);
    const double fb = force_general_bohm(a, b, s.config(), 1e-12);
    const double fq = force_general_qm(a, b, s.config());
    EXPECT_NEAR(fb, fq, 1e-8 * std::max(1.0, std::abs(fq)));
}

TEST(Force, WallLimitsAtSimpleZero) {
    WaveSample w{};
    w.dpsi = {3.0, 4.0};
    w.d2psi = {1.0, 1.0};
    const WallPolarProducts p = wall_polar_products(w, 1.0, 1e-12);
    EXPECT_EQ(p.r2_ds, 0.0);
    EXPECT_EQ(p.r_ds, 0.0);
    EXPECT_EQ(p.r_d2r, 0.0);
    EXPECT_DOUBLE_EQ(p.dr_sq, 25.0);
}

TEST(Force, MomentumTheoremHolds) {
    const SpectralState s = make(StateKind::tbs, 100.0 * pi, 25.0 * pi);
    const double h = 1e-7;
    for (double t : {1e-4, 4e-4}) {
        const double dp = (p_expectation_raw(s, t + h) - p_expectation_raw(s, t - h)) / (2.0 * h);
        const double f = force_boundary(s, t);
        EXPECT_NEAR(dp, f, 1e-3 * std::max(std::abs(f), 1.0)) << t;
    }
}

TEST(Force, MomentumFromForceIntegratesTheSeries) {
    const TimeSeries f({0.0, 1.0, 2.0}, {2.0, 2.0, 2.0});
    const TimeSeries p = momentum_from_force(f, 5.0);
    EXPECT_DOUBLE_EQ(p.value(0), 5.0);
    EXPECT_DOUBLE_EQ(p.value(2), 9.0);
}

TEST(Force, FormulationNamesRoundTrip) {
    for (ForceFormulation f : {ForceFormulation::boundary, ForceFormulation::general_bohm, ForceFormulation::general_qm}) {
        EXPECT_EQ(parse_force_formulation(to_string(f)), f);
    }
    EXPECT_FALSE(parse_force_formulation("wall").has_value());
}

TEST(Onset, DetectsFirstDeparture) {
    const TimeSeries dyn({0.0, 1.0, 2.0, 3.0}, {0.0, 0.2, 2.0, 10.0});
    const TimeSeries ref({0.0, 1.0, 2.0, 3.0}, {0.0, 0.0, 0.0, 0.0});
    EXPECT_EQ(deviation_onset(dyn, ref), 2.0);
    EXPECT_EQ(deviation_onset(dyn, ref, 0.01), 1.0);
    EXPECT_FALSE(deviation_onset(ref, ref).has_value());
    EXPECT_THROW(deviation_onset(dyn, TimeSeries({0.0, 1.0}, {0.0, 0.0})), InvalidArgument);
}

TEST(UniformTimes, EndpointsAreExact) {
    const auto t = uniform_times(0.0, 3e-3, 7);
    ASSERT_EQ(t.size(), 7u);
    EXPECT_EQ(t.front(), 0.0);
    EXPECT_EQ(t.back(), 3e-3);
    EXPECT_THROW(uniform_times(0.0, 1.0, 1), InvalidArgument);
    EXPECT_THROW(uniform_times(1.0, 1.0, 3), InvalidArgument);
}

TEST(QuantumPotential, GaussianAtItsCentre) {
    // For a real Gaussian R = exp(-x^2 / (4 s^2)), Q(centre) = (hbar^2/2m) / (2 s^2).
    // The inner box is widened to 20 sigma so the cut-off jump is negligible.
    PhysicsConfig wide;
    wide.u = 0.0;
    wide.ell1 = 0.1;
    const SpectralState s = build_spectrum(StateKind::tgp, wide, CoefficientMethod::closed_form);
    const PhysicsConfig& c = s.config();
    const double expect = c.hbar * c.hbar / (2.0 * c.mass) / (2.0 * c.sigma0 * c.sigma0);
    EXPECT_NEAR(quantum_potential(s, 0.5, 0.0), expect, 1e-3 * expect);
}
