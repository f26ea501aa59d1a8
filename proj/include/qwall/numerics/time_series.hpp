#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qwall/numerics/error.hpp"

namespace qwall {

/// Ordered (t, value) samples with strictly increasing times.
class TimeSeries {
public:
    TimeSeries() = default;

    TimeSeries(std::vector<double> times, std::vector<double> values)
        : times_(std::move(times)), values_(std::move(values)) {
        if (times_.size() != values_.size()) {
            throw InvalidArgument("TimeSeries: times and values differ in length");
        }
        for (std::size_t i = 1; i < times_.size(); ++i) {
            if (!(times_[i] > times_[i - 1])) {
                throw InvalidArgument("TimeSeries: times must be strictly increasing");
            }
        }
    }

    void push_back(double t, double value) {
        if (!times_.empty() && !(t > times_.back())) {
            throw InvalidArgument("TimeSeries: times must be strictly increasing");
        }
        times_.push_back(t);
        values_.push_back(value);
    }

    [[nodiscard]] std::size_t size() const noexcept { return times_.size(); }
    [[nodiscard]] bool empty() const noexcept { return times_.empty(); }
    [[nodiscard]] const std::vector<double>& times() const noexcept { return times_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
    [[nodiscard]] double time(std::size_t i) const { return times_.at(i); }
    [[nodiscard]] double value(std::size_t i) const { return values_.at(i); }

private:
    std::vector<double> times_;
    std::vector<double> values_;
};

enum class CumulativeMethod { trapezoid };

inline const char* to_string(CumulativeMethod m) {
    switch (m) {
    case CumulativeMethod::trapezoid:
        return "trapezoid";
    }
    return "unknown";
}

/// Running integral of a sampled series plus the rule that produced it.
struct CumulativeResult {
    TimeSeries series;
    CumulativeMethod method = CumulativeMethod::trapezoid;
};

/// Running integral int_{t_0}^{t_i} f dt by the composite trapezoid rule.
/// The first value is 0. Works on non-uniform grids.
inline CumulativeResult cumulative_integral(const TimeSeries& series) {
    if (series.size() < 2) {
        throw InvalidArgument("cumulative_integral: need at least 2 samples, got " +
                              std::to_string(series.size()));
    }
    const auto& t = series.times();
    const auto& f = series.values();
    std::vector<double> acc(t.size(), 0.0);
    for (std::size_t i = 1; i < t.size(); ++i) {
        acc[i] = acc[i - 1] + 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
    }
    return {TimeSeries(t, std::move(acc)), CumulativeMethod::trapezoid};
}

} // namespace qwall
