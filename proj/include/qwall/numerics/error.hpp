#pragma once

#include <stdexcept>
#include <string>

namespace qwall {

/// Base of every error raised by the library. `kind()` is used by the CLI to
/// pick an exit code and by callers that want to branch without RTTI.
class Error : public std::runtime_error {
public:
    enum class Kind {
        invalid_argument,
        domain_expired,
        node_singularity,
        numeric_range,
        numeric_consistency,
        unsupported_method,
        singularity,
        linear_solve,
    };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(Kind::invalid_argument, what) {}
};

/// Raised when t leaves the interval on which l(t) = l0 + u t stays positive.
class DomainExpired : public Error {
public:
    explicit DomainExpired(const std::string& what) : Error(Kind::domain_expired, what) {}
};

/// |psi| fell below the node floor where a polar quantity was requested.
class NodeSingularity : public Error {
public:
    NodeSingularity(double x, double t, const std::string& what)
        : Error(Kind::node_singularity, what), x_(x), t_(t) {}

    [[nodiscard]] double x() const noexcept { return x_; }
    [[nodiscard]] double t() const noexcept { return t_; }

private:
    double x_;
    double t_;
};

class NumericRange : public Error {
public:
    explicit NumericRange(const std::string& what) : Error(Kind::numeric_range, what) {}
};

class NumericConsistency : public Error {
public:
    explicit NumericConsistency(const std::string& what) : Error(Kind::numeric_consistency, what) {}
};

class UnsupportedMethod : public Error {
public:
    explicit UnsupportedMethod(const std::string& what) : Error(Kind::unsupported_method, what) {}
};

/// A right-hand side returned a non-finite value during an ODE stage.
class SingularityError : public Error {
public:
    SingularityError(double t, double x, const std::string& what)
        : Error(Kind::singularity, what), t_(t), x_(x) {}

    [[nodiscard]] double t() const noexcept { return t_; }
    [[nodiscard]] double x() const noexcept { return x_; }

private:
    double t_;
    double x_;
};

class LinearSolveError : public Error {
public:
    explicit LinearSolveError(const std::string& what) : Error(Kind::linear_solve, what) {}
};

} // namespace qwall
