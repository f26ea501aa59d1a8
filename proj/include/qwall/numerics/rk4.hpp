#pragma once

#include <cmath>
#include <concepts>
#include <sstream>

#include "qwall/numerics/error.hpp"

namespace qwall {

template <typename F>
concept VelocityField = std::invocable<F, double, double> &&
                        std::convertible_to<std::invoke_result_t<F, double, double>, double>;

/// One classical fourth-order Runge-Kutta step of dx/dt = velocity(t, x).
///
/// Throws SingularityError carrying the stage point if the field returns a
/// non-finite value.
template <VelocityField F>
double rk4_step(F&& velocity, double t, double x, double dt) {
    if (!(dt > 0.0)) {
        throw InvalidArgument("rk4_step: dt must be positive");
    }
    auto stage = [&](double ts, double xs) {
        const double v = velocity(ts, xs);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "rk4_step: non-finite velocity at t=" << ts << ", x=" << xs;
            throw SingularityError(ts, xs, msg.str());
        }
        return v;
    };
    const double half = 0.5 * dt;
    const double k1 = stage(t, x);
    const double k2 = stage(t + half, x + half * k1);
    const double k3 = stage(t + half, x + half * k2);
    const double k4 = stage(t + dt, x + dt * k3);
    return x + dt * (k1 + 2.0 * (k2 + k3) + k4) / 6.0;
}

} // namespace qwall
