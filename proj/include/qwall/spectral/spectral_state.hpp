#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qwall/numerics/complex_erf.hpp"
#include "qwall/numerics/error.hpp"
#include "qwall/numerics/quadrature.hpp"
#include "qwall/spectral/coefficients.hpp"
#include "qwall/spectral/initial_state.hpp"
#include "qwall/spectral/physics_config.hpp"

namespace qwall {

enum class CoefficientMethod { closed_form, quadrature, supplied };

inline std::string_view to_string(CoefficientMethod m) {
    switch (m) {
    case CoefficientMethod::closed_form:
        return "closed-form";
    case CoefficientMethod::quadrature:
        return "quadrature";
    case CoefficientMethod::supplied:
        return "supplied";
    }
    return "unknown";
}

/// psi and its first two x-derivatives at one space-time point.
struct WaveSample {
    Complex psi;
    Complex dpsi;
    Complex d2psi;
    double x = 0.0;
    double t = 0.0;
};

class SpectralState;

/// The series frozen at one instant: the time phases are folded into the
/// coefficients once so evaluation at many x costs one rotation per term.
class TimeSlice {
public:
    [[nodiscard]] double t() const noexcept { return t_; }
    [[nodiscard]] double width() const noexcept { return width_; }
    [[nodiscard]] const PhysicsConfig& config() const noexcept { return cfg_; }

    /// psi, psi', psi'' at x in [0, l(t)], differentiated term by term.
    [[nodiscard]] WaveSample evaluate(double x) const {
        if (!(x >= 0.0 && x <= width_)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "evaluate: x=" << x << " outside [0, l(t)=" << width_ << "] at t=" << t_;
            throw InvalidArgument(msg.str());
        }
        // sum_n c_n sin(k_n x), sum_n c_n k_n cos(k_n x), sum_n c_n k_n^2 sin(k_n x)
        Complex s0{};
        Complex s1{};
        Complex s2{};
        const double k1 = std::numbers::pi / width_;
        const Complex step = std::polar(1.0, k1 * x);
        Complex rot = step;
        for (std::size_t j = 0; j < phased_.size(); ++j) {
            const double kn = k1 * static_cast<double>(j + 1);
            const Complex& c = phased_[j];
            const double sn = rot.imag();
            const double cs = rot.real();
            s0 += c * sn;
            s1 += c * (kn * cs);
            s2 += c * (kn * kn * sn);
            rot *= step;
        }
        return assemble(x, s0, s1, -s2);
    }

    /// Same as evaluate() with every sine and cosine computed directly.
    /// Reference path for the rotation recurrence.
    [[nodiscard]] WaveSample evaluate_direct(double x) const {
        if (!(x >= 0.0 && x <= width_)) {
            throw InvalidArgument("evaluate_direct: x outside [0, l(t)]");
        }
        Complex s0{};
        Complex s1{};
        Complex s2{};
        const double k1 = std::numbers::pi / width_;
        for (std::size_t j = 0; j < phased_.size(); ++j) {
            const double kn = k1 * static_cast<double>(j + 1);
            const double sn = std::sin(kn * x);
            const double cs = std::cos(kn * x);
            s0 += phased_[j] * sn;
            s1 += phased_[j] * (kn * cs);
            s2 -= phased_[j] * (kn * kn * sn);
        }
        return assemble(x, s0, s1, s2);
    }

    /// psi'(0) and psi'(l) from the series with sin = 0 and cos = +-1 exact.
    [[nodiscard]] std::pair<WaveSample, WaveSample> walls() const {
        Complex left{};
        Complex right{};
        const double k1 = std::numbers::pi / width_;
        for (std::size_t j = 0; j < phased_.size(); ++j) {
            const double kn = k1 * static_cast<double>(j + 1);
            const Complex term = phased_[j] * kn;
            left += term;
            right += (j % 2 == 0) ? -term : term;
        }
        // At a wall every sine vanishes, so psi'' = 2 (chirp'/chirp) psi' and
        // chirp'/chirp = 2 i alpha x is zero at x = 0.
        const Complex a0 = amplitude_ * chirp(0.0);
        const Complex al = amplitude_ * chirp(width_);
        const Complex right2 = Complex(0.0, 4.0 * chirp_rate() * width_) * right;
        WaveSample w0{Complex{}, a0 * left, Complex{}, 0.0, t_};
        WaveSample wl{Complex{}, al * right, al * right2, width_, t_};
        return {w0, wl};
    }

    /// max |psi| over the Simpson nodes of [0, l(t)].
    [[nodiscard]] double max_modulus(QuadratureSpec spec = QuadratureSpec(spatial_panels_default)) const {
        const int panels = spec.panels();
        const double h = width_ / panels;
        double best = 0.0;
        for (int j = 0; j <= panels; ++j) {
            best = std::max(best, std::abs(evaluate(j * h).psi));
        }
        return best;
    }

    /// Time-independent bound sup|psi| <= 2/sqrt(l0 l) * sum |f_n|.
    [[nodiscard]] double modulus_bound() const noexcept { return amplitude_ * abs_sum_; }

private:
    friend class SpectralState;

    TimeSlice(const PhysicsConfig& cfg, std::vector<Complex> phased, double t, double abs_sum)
        : cfg_(cfg), phased_(std::move(phased)), t_(t), width_(cfg.width(t)), abs_sum_(abs_sum) {
        amplitude_ = 2.0 / std::sqrt(cfg_.ell0 * width_);
    }

    // alpha in exp(i alpha x^2), alpha = m u / (2 hbar l(t)).
    [[nodiscard]] double chirp_rate() const noexcept {
        return cfg_.mass * cfg_.u / (2.0 * cfg_.hbar * width_);
    }

    [[nodiscard]] Complex chirp(double x) const { return std::polar(1.0, chirp_rate() * x * x); }

    [[nodiscard]] WaveSample assemble(double x, Complex s0, Complex s1, Complex s2) const {
        constexpr Complex i{0.0, 1.0};
        const double alpha = chirp_rate();
        const Complex a = amplitude_ * chirp(x);
        const Complex g1 = 2.0 * i * alpha * x;                  // chirp'/chirp
        const Complex g2 = 2.0 * i * alpha - 4.0 * alpha * alpha * x * x; // chirp''/chirp
        WaveSample w;
        w.psi = a * s0;
        w.dpsi = a * (g1 * s0 + s1);
        w.d2psi = a * (g2 * s0 + 2.0 * g1 * s1 + s2);
        w.x = x;
        w.t = t_;
        return w;
    }

    PhysicsConfig cfg_;
    std::vector<Complex> phased_;
    double t_;
    double width_;
    double abs_sum_;
    double amplitude_ = 0.0;
};

/// Expansion coefficients of psi_0 in the moving-wall basis, fixed at
/// construction. psi(x, t) is
///
///   2/sqrt(l0 l) exp(i m u x^2/(2 hbar l)) sum_n exp(-i n^2 pi^2 hbar t/(2 m l0 l)) sin(n pi x/l) f_n.
///
/// Immutable; slices and samples can be taken concurrently.
class SpectralState {
public:
    SpectralState(PhysicsConfig cfg, StateKind kind, std::vector<Complex> coefficients, CoefficientMethod method)
        : cfg_(std::move(cfg)), kind_(kind), coefficients_(std::move(coefficients)), method_(method) {
        cfg_.validate();
        if (coefficients_.empty()) {
            throw InvalidArgument("SpectralState: empty coefficient list");
        }
        cfg_.n_terms = static_cast<int>(coefficients_.size());
        for (const Complex& f : coefficients_) {
            parseval_ += std::norm(f);
            abs_sum_ += std::abs(f);
        }
        parseval_ *= 2.0 / cfg_.ell0;
    }

    /// A spectrum from explicit coefficients (eigenstates, test fields).
    static SpectralState from_coefficients(const PhysicsConfig& cfg, std::vector<Complex> coefficients) {
        return SpectralState(cfg, StateKind::custom, std::move(coefficients), CoefficientMethod::supplied);
    }

    [[nodiscard]] const PhysicsConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] StateKind kind() const noexcept { return kind_; }
    [[nodiscard]] CoefficientMethod method() const noexcept { return method_; }
    [[nodiscard]] const std::vector<Complex>& coefficients() const noexcept { return coefficients_; }

    /// (2/l0) sum |f_n|^2, the norm of the truncated series at every t.
    [[nodiscard]] double parseval_sum() const noexcept { return parseval_; }

    [[nodiscard]] TimeSlice slice(double t) const {
        cfg_.require_time(t);
        const double width = cfg_.width(t);
        if (!(width > 0.0)) {
            throw DomainExpired("slice: l(t) <= 0");
        }
        const double theta = std::numbers::pi * std::numbers::pi * cfg_.hbar * t / (2.0 * cfg_.mass * cfg_.ell0 * width);
        std::vector<Complex> phased(coefficients_.size());
        for (std::size_t j = 0; j < coefficients_.size(); ++j) {
            const double n = static_cast<double>(j + 1);
            phased[j] = coefficients_[j] * std::polar(1.0, -n * n * theta);
        }
        return TimeSlice(cfg_, std::move(phased), t, abs_sum_);
    }

    [[nodiscard]] WaveSample evaluate(double x, double t) const { return slice(t).evaluate(x); }

private:
    PhysicsConfig cfg_;
    StateKind kind_;
    std::vector<Complex> coefficients_;
    CoefficientMethod method_;
    double parseval_ = 0.0;
    double abs_sum_ = 0.0;
};

/// Coefficients for n = 1..cfg.n_terms by the requested route.
/// The closed form exists only for the Gaussian packet.
inline SpectralState build_spectrum(StateKind state, const PhysicsConfig& cfg, CoefficientMethod method,
                                    QuadratureSpec spec = QuadratureSpec(coefficient_panels_default)) {
    cfg.validate();
    std::vector<Complex> coeffs;
    switch (method) {
    case CoefficientMethod::closed_form:
        if (state != StateKind::tgp) {
            throw UnsupportedMethod("build_spectrum: closed-form coefficients exist only for the tgp state");
        }
        coeffs.reserve(static_cast<std::size_t>(cfg.n_terms));
        for (int n = 1; n <= cfg.n_terms; ++n) {
            coeffs.push_back(coefficient_closed_form_tgp(n, cfg));
        }
        break;
    case CoefficientMethod::quadrature:
        if (state == StateKind::custom) {
            throw UnsupportedMethod("build_spectrum: custom states carry their own coefficients");
        }
        coeffs = coefficients_quadrature(state, cfg, spec);
        break;
    case CoefficientMethod::supplied:
        throw UnsupportedMethod("build_spectrum: use SpectralState::from_coefficients");
    }
    return SpectralState(cfg, state, std::move(coeffs), method);
}

/// Simpson norm of psi_0 over the inner box, the reference for the Parseval sum.
inline double initial_norm(StateKind state, const PhysicsConfig& cfg,
                           QuadratureSpec spec = QuadratureSpec(spatial_panels_default)) {
    return simpson([&](double x) { return std::norm(initial_amplitude(state, cfg, x)); }, cfg.x1(), cfg.x2(), spec);
}

} // namespace qwall
