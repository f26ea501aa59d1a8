#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "qwall/numerics/error.hpp"

namespace qwall {

using Complex = std::complex<double>;

/// Split form of the complex error function,
///
///     erf(z) = head + exp(-z*z) * tail
///
/// Products like exp(E) * erf(z) can then be formed as
/// exp(E) * head + exp(E - z*z) * tail without overflowing either factor.
/// The split survives both erf symmetries (odd, conjugate) unchanged in shape.
struct ErfParts {
    Complex head;
    Complex tail;

    [[nodiscard]] Complex value(Complex z) const {
        if (tail == Complex{}) {
            return head;
        }
        return head + std::exp(-z * z) * tail;
    }

    /// exp(exponent) * erf(z), grouping each exponential with its own factor.
    [[nodiscard]] Complex scaled(Complex exponent, Complex z) const {
        Complex out{};
        if (head != Complex{}) {
            out += std::exp(exponent) * head;
        }
        if (tail != Complex{}) {
            out += std::exp(exponent - z * z) * tail;
        }
        return out;
    }
};

namespace detail {

inline constexpr double two_over_sqrt_pi = 2.0 * std::numbers::inv_sqrtpi;

// Region boundaries in the first quadrant. Inside `series_radius` the Maclaurin
// series loses at most a few hundred ulps. Between it and `asymptotic_radius`
// the series is still used close to the imaginary axis (cancellation there is
// bounded by exp(2 x^2)); elsewhere the erfc continued fraction takes over.
inline constexpr double series_radius = 3.0;
inline constexpr double asymptotic_radius = 8.0;
inline constexpr double series_strip = 1.5;

inline Complex erf_maclaurin(Complex z) {
    // erf(z) = 2/sqrt(pi) sum_n (-1)^n z^(2n+1) / (n! (2n+1))
    const Complex z2 = z * z;
    Complex term = z;
    Complex sum = z;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int n = 1; n < 2000; ++n) {
        term *= -z2 / static_cast<double>(n);
        const Complex add = term / static_cast<double>(2 * n + 1);
        sum += add;
        if (std::abs(add) <= 0.25 * eps * std::abs(sum)) {
            break;
        }
    }
    return two_over_sqrt_pi * sum;
}

// erfc(z) = exp(-z^2) * g(z) for Re z > 0, g from the Laplace continued
// fraction g = (1/sqrt(pi)) / (z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))),
// evaluated with the modified Lentz algorithm.
inline Complex erfc_scaled_cf(Complex z) {
    constexpr double tiny = 1e-300;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    Complex f = z;
    Complex c = f;
    Complex d = 0.0;
    for (int k = 1; k < 20000; ++k) {
        const double a = 0.5 * k;
        d = z + a * d;
        if (d == Complex{}) {
            d = tiny;
        }
        c = z + a / c;
        if (c == Complex{}) {
            c = tiny;
        }
        d = 1.0 / d;
        const Complex delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < eps) {
            break;
        }
    }
    return std::numbers::inv_sqrtpi / f;
}

// Asymptotic series g(z) ~ 1/(sqrt(pi) z) sum_k (-1)^k (2k-1)!! / (2 z^2)^k,
// truncated at the smallest term. Used for |z| >= asymptotic_radius where the
// smallest term is below exp(-64).
inline Complex erfc_scaled_asymptotic(Complex z) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const Complex inv2z2 = 1.0 / (2.0 * z * z);
    Complex term = 1.0;
    Complex sum = 1.0;
    double last = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= -static_cast<double>(2 * k - 1) * inv2z2;
        const double mag = std::abs(term);
        if (mag > last) {
            break;
        }
        sum += term;
        last = mag;
        if (mag < 0.25 * eps * std::abs(sum)) {
            break;
        }
    }
    return std::numbers::inv_sqrtpi * sum / z;
}

// First-quadrant evaluation (Re z >= 0, Im z >= 0).
inline ErfParts erf_parts_first_quadrant(Complex z) {
    const double r = std::abs(z);
    if (r <= series_radius || (r < asymptotic_radius && z.real() < series_strip)) {
        return {erf_maclaurin(z), Complex{}};
    }
    if (r >= asymptotic_radius) {
        return {1.0, -erfc_scaled_asymptotic(z)};
    }
    return {1.0, -erfc_scaled_cf(z)};
}

inline void require_finite(Complex z, const char* op) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InvalidArgument(std::string(op) + ": non-finite argument");
    }
}

} // namespace detail

/// Split erf for any finite z; reduces to the first quadrant via
/// erf(-z) = -erf(z) and erf(conj z) = conj(erf z).
inline ErfParts erf_parts(Complex z) {
    detail::require_finite(z, "cerf");
    const bool flip_re = z.real() < 0.0;
    const bool flip_im = z.imag() < 0.0;
    // Map to the first quadrant: -conj(z) flips Re, conj(z) flips Im.
    Complex w = z;
    if (flip_re) {
        w = -std::conj(w);
    }
    if (flip_im) {
        w = std::conj(w);
    }
    ErfParts p = detail::erf_parts_first_quadrant(w);
    if (flip_im) {
        p = {std::conj(p.head), std::conj(p.tail)};
    }
    if (flip_re) {
        p = {-std::conj(p.head), -std::conj(p.tail)};
    }
    return p;
}

/// Complex error function erf(z) = 2/sqrt(pi) * integral_0^z exp(-t^2) dt.
///
/// Throws InvalidArgument on non-finite input and NumericRange if the value
/// itself is not representable (|erf(z)| ~ exp(Im(z)^2 - Re(z)^2) overflows).
inline Complex cerf(Complex z) {
    const ErfParts p = erf_parts(z);
    const Complex v = p.value(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw NumericRange("cerf: result overflows double precision");
    }
    return v;
}

/// Imaginary error function erfi(z) = 2/sqrt(pi) * integral_0^z exp(t^2) dt
/// = -i erf(i z).
inline Complex cerfi(Complex z) {
    detail::require_finite(z, "cerfi");
    constexpr Complex i{0.0, 1.0};
    return -i * cerf(i * z);
}

} // namespace qwall
