#pragma once

#include <complex>
#include <concepts>
#include <string>
#include <type_traits>

#include "qwall/numerics/error.hpp"

namespace qwall {

/// Number of Simpson subintervals; always even and at least 2.
class QuadratureSpec {
public:
    explicit QuadratureSpec(int panels = 2000) : panels_(panels) {
        if (panels < 2 || panels % 2 != 0) {
            throw InvalidArgument("QuadratureSpec: panels must be even and >= 2, got " +
                                  std::to_string(panels));
        }
    }

    [[nodiscard]] int panels() const noexcept { return panels_; }

    [[nodiscard]] QuadratureSpec doubled() const { return QuadratureSpec(2 * panels_); }

    friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;

private:
    int panels_;
};

/// Composite Simpson rule over [a, b]. Works for real or complex integrands;
/// the return type follows the integrand.
template <typename F>
    requires std::invocable<F, double>
auto simpson(F&& integrand, double a, double b, QuadratureSpec spec) {
    using R = std::decay_t<std::invoke_result_t<F, double>>;
    if (!(a <= b)) {
        throw InvalidArgument("simpson: lower limit exceeds upper limit");
    }
    const int n = spec.panels();
    const double h = (b - a) / n;
    R odd{};
    R even{};
    for (int j = 1; j < n; ++j) {
        const double x = a + j * h;
        if (j % 2 == 1) {
            odd += integrand(x);
        } else {
            even += integrand(x);
        }
    }
    const R ends = integrand(a) + integrand(b);
    return (ends + 4.0 * odd + 2.0 * even) * (h / 3.0);
}

/// Simpson weights for the nodes a + j h, j = 0..panels. Used where the same
/// grid is reused for several integrands.
inline double simpson_weight(int j, int panels, double h) {
    if (j == 0 || j == panels) {
        return h / 3.0;
    }
    return (j % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
}

} // namespace qwall
