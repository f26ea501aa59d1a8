#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "qwall/numerics/error.hpp"

namespace qwall {

/// Every physical parameter of a run. Defaults are the reference setup:
/// hbar = 1, m = 0.5, l0 = 1, l1 = l0/20, sigma0 = l1/10, u = 100 pi, k = 0,
/// 400 series terms.
struct PhysicsConfig {
    double hbar = 1.0;
    double mass = 0.5;
    double ell0 = 1.0;
    double ell1 = 0.05;
    double sigma0 = 0.005;
    double u = 100.0 * std::numbers::pi;
    double k = 0.0;
    int n_terms = 400;

    /// Left wall of the inner box.
    [[nodiscard]] double x1() const noexcept { return 0.5 * (ell0 - ell1); }
    /// Right wall of the inner box.
    [[nodiscard]] double x2() const noexcept { return 0.5 * (ell0 + ell1); }
    [[nodiscard]] double xc() const noexcept { return 0.5 * ell0; }

    /// Position of the moving wall, l(t) = l0 + u t.
    [[nodiscard]] double width(double t) const noexcept { return ell0 + u * t; }

    /// First time at which l(t) reaches zero (infinite for u >= 0).
    [[nodiscard]] double expiry() const noexcept {
        return u < 0.0 ? ell0 / -u : std::numeric_limits<double>::infinity();
    }

    void validate() const {
        auto bad = [](const std::string& what) { throw InvalidArgument("PhysicsConfig: " + what); };
        auto finite = [](double v) { return std::isfinite(v); };
        if (!finite(hbar) || hbar <= 0.0) bad("hbar must be positive");
        if (!finite(mass) || mass <= 0.0) bad("mass must be positive");
        if (!finite(ell0) || ell0 <= 0.0) bad("ell0 must be positive");
        if (!finite(ell1) || ell1 <= 0.0 || ell1 >= ell0) bad("ell1 must lie in (0, ell0)");
        if (!finite(sigma0) || sigma0 <= 0.0) bad("sigma0 must be positive");
        if (!finite(u)) bad("u must be finite");
        if (!finite(k)) bad("k must be finite");
        if (n_terms < 1) bad("n_terms must be >= 1");
    }

    /// Throws DomainExpired unless 0 <= t < expiry().
    void require_time(double t) const {
        if (!std::isfinite(t) || t < 0.0) {
            throw InvalidArgument("time must be finite and non-negative");
        }
        if (!(t < expiry())) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "t=" << t << " is past the contracting-box limit l0/|u|=" << expiry();
            throw DomainExpired(msg.str());
        }
    }

    friend bool operator==(const PhysicsConfig&, const PhysicsConfig&) = default;
};

} // namespace qwall
