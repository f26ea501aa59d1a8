#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "qwall/bohm/trajectory.hpp"
#include "qwall/numerics/error.hpp"
#include "qwall/observables/observables.hpp"
#include "qwall/oracle/grid_solver.hpp"
#include "qwall/scenario/output.hpp"
#include "qwall/scenario/scenario.hpp"
#include "qwall/spectral/spectral_state.hpp"
#include "qwall/version.hpp"

namespace qwall::scenario {

/// Largest allowed change of the norm between t0 and t1 of any curve.
inline constexpr double norm_control_tolerance = 1e-6;

struct RunOptions {
    std::filesystem::path out_dir = ".";
    bool svg = false;
    int threads = 1;
};

/// A numeric failure inside a run, tagged with where it happened.
class RunError : public std::runtime_error {
public:
    RunError(std::string stage, const std::string& what) : std::runtime_error(what), stage_(std::move(stage)) {}

    [[nodiscard]] const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

struct RunResult {
    std::vector<std::filesystem::path> files; ///< in write order
    nlohmann::ordered_json manifest;
};

namespace detail {

struct CurveOutput {
    std::vector<std::pair<std::string, Table>> tables; ///< file stem, table
    nlohmann::ordered_json record;
    std::vector<double> center_path; ///< bohm-center samples, dynamic curves only
};

inline std::string curve_suffix(const Scenario& s, const Curve& c) {
    std::string out = std::string(to_string(c.state)) + "_" + std::string(to_string(c.wall));
    if (c.wall == WallCase::dynamic_wall && s.u_values.size() > 1) {
        out += "_u" + pi_label(c.physics.u);
    }
    if (s.k_values.size() > 1) {
        out += "_k" + pi_label(c.physics.k);
    }
    return out;
}

inline std::vector<double> sampled_positions(const Trajectory& tr, const std::vector<double>& times) {
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        out.push_back(t <= tr.times.back() ? tr.position_at(t) : std::numeric_limits<double>::quiet_NaN());
    }
    return out;
}

inline CurveOutput run_curve(const Scenario& s, const Curve& c) {
    std::string stage = "spectral/build_spectrum";
    try {
        CurveOutput out;
        const std::string suffix = curve_suffix(s, c);
        const QuadratureSpec q(s.quad_panels);
        const SpectralState spec = build_spectrum(c.state, c.physics, CoefficientMethod::quadrature);
        const std::vector<double> times = uniform_times(s.window.t0, s.window.t1, s.window.samples);

        stage = "observables/norm";
        const double norm_t0 = norm(spec, s.window.t0, q);
        const double norm_t1 = norm(spec, s.window.t1, q);
        out.record["state"] = std::string(to_string(c.state));
        out.record["case"] = std::string(to_string(c.wall));
        out.record["u"] = c.physics.u;
        out.record["k"] = c.physics.k;
        out.record["coefficient_method"] = std::string(to_string(spec.method()));
        out.record["parseval_sum"] = spec.parseval_sum();
        out.record["norm_t0"] = norm_t0;
        out.record["norm_t1"] = norm_t1;
        if (!(std::abs(norm_t1 - norm_t0) <= norm_control_tolerance)) {
            throw NumericConsistency("norm changed by " + format_number(norm_t1 - norm_t0) + " between t0 and t1 (" +
                                     suffix + ")");
        }

        for (Computation comp : s.computations) {
            Table table;
            switch (comp) {
            case Computation::snapshot: {
                stage = "spectral/evaluate";
                const TimeSlice slice = spec.slice(s.window.t0);
                table.header = {"x", "re_psi", "im_psi", "density"};
                const int n = s.snapshot_points;
                for (int i = 0; i < n; ++i) {
                    const double x = (i == n - 1) ? slice.width() : slice.width() * i / (n - 1);
                    const Complex psi = slice.evaluate(x).psi;
                    table.rows.push_back({x, psi.real(), psi.imag(), std::norm(psi)});
                }
                break;
            }
            case Computation::norm:
            case Computation::xmean:
            case Computation::pmean: {
                stage = "observables/moments";
                const char* column = comp == Computation::norm ? "norm" : comp == Computation::xmean ? "x_mean" : "p_mean";
                table.header = {"t", column};
                for (double t : times) {
                    const Moments m = moments(spec, t, q);
                    if (comp == Computation::pmean) {
                        qwall::detail::check_momentum_residual(m);
                    }
                    const double v = comp == Computation::norm ? m.norm : comp == Computation::xmean ? m.x_mean() : m.p_mean();
                    table.rows.push_back({t, v});
                }
                break;
            }
            case Computation::force: {
                stage = "observables/force_series";
                table.header = {"t", "f_qm"};
                const TimeSeries f = force_series(spec, times, s.formulation);
                for (std::size_t i = 0; i < f.size(); ++i) {
                    table.rows.push_back({f.time(i), f.value(i)});
                }
                break;
            }
            case Computation::trajectories: {
                stage = "bohm/ensemble";
                table.header = {"t"};
                std::vector<std::vector<double>> columns;
                auto& statuses = out.record["trajectory_status"] = nlohmann::ordered_json::array();
                for (const Trajectory& tr : ensemble(spec, {s.starts, s.window.t1, s.traj_dt})) {
                    table.header.push_back("x0=" + format_short(tr.x0));
                    columns.push_back(sampled_positions(tr, times));
                    statuses.push_back(std::string(to_string(tr.status)));
                }
                for (std::size_t i = 0; i < times.size(); ++i) {
                    std::vector<double> row{times[i]};
                    for (const auto& col : columns) {
                        row.push_back(col[i]);
                    }
                    table.rows.push_back(std::move(row));
                }
                break;
            }
            case Computation::bohm_center: {
                if (c.wall != WallCase::dynamic_wall) {
                    continue;
                }
                stage = "bohm/integrate_trajectory";
                const double x0 = moments(spec, 0.0, q).x_mean();
                const Trajectory tr = integrate_trajectory(spec, x0, s.window.t1, s.traj_dt);
                out.record["center_start"] = x0;
                out.record["center_status"] = std::string(to_string(tr.status));
                out.center_path = sampled_positions(tr, times);
                continue;
            }
            case Computation::oracle: {
                stage = "oracle/compare";
                oracle::GridState g = oracle::initial_grid(c.state, c.physics, s.oracle_grid);
                const double n0 = oracle::grid_norm(g, c.physics);
                g = oracle::evolve(std::move(g), s.oracle_grid, c.physics, s.window.t1);
                const oracle::Discrepancy d = oracle::compare(spec, g, s.window.t1);
                table.header = {"t", "l2_error", "linf_error", "grid_norm_drift"};
                table.rows.push_back({s.window.t1, d.l2_error, d.linf_error, oracle::grid_norm(g, c.physics) - n0});
                break;
            }
            }
            out.tables.emplace_back(std::string(to_string(comp)) + "_" + suffix, std::move(table));
        }
        return out;
    } catch (const qwall::Error& e) {
        throw RunError(stage, e.what());
    }
}

} // namespace detail

/// Runs every curve of the scenario, up to `threads` at a time, then writes
/// the CSV files (and SVGs) and run_manifest.json in a fixed order. The
/// bytes written do not depend on the thread count.
inline RunResult run(const Scenario& s, const RunOptions& opt) {
    validate(s);
    ensure_directory(opt.out_dir);
    const std::vector<Curve> all = curves(s);
    std::vector<detail::CurveOutput> results(all.size());
    std::vector<std::exception_ptr> errors(all.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < all.size(); i = next++) {
            try {
                results[i] = detail::run_curve(s, all[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto n_threads = static_cast<std::size_t>(std::clamp(opt.threads, 1, 256));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < std::min(n_threads, all.size()); ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& th : pool) {
        th.join();
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (errors[i]) {
            try {
                std::rethrow_exception(errors[i]);
            } catch (const RunError& e) {
                throw RunError(e.stage(), std::string(e.what()) + " [preset " + s.name + ", " +
                                              detail::curve_suffix(s, all[i]) + "]");
            }
        }
    }

    RunResult out;
    auto emit = [&](const std::string& stem, const Table& table) {
        const auto csv_path = opt.out_dir / (stem + ".csv");
        write_file(csv_path, table.csv());
        out.files.push_back(csv_path);
        if (opt.svg) {
            const auto svg_path = opt.out_dir / (stem + ".svg");
            write_file(svg_path, svg_plot(table, stem));
            out.files.push_back(svg_path);
        }
    };

    nlohmann::ordered_json manifest;
    manifest["tool"] = "qwall";
    manifest["version"] = version;
    manifest["scenario"] = scenario_json(s);
    manifest["norm_control_tolerance"] = norm_control_tolerance;
    auto& records = manifest["curves"] = nlohmann::ordered_json::array();
    double worst_drift = 0.0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (const auto& [stem, table] : results[i].tables) {
            emit(stem, table);
            results[i].record["files"].push_back(stem + ".csv");
        }
        worst_drift = std::max(worst_drift, std::abs(results[i].record["norm_t1"].get<double>() -
                                                      results[i].record["norm_t0"].get<double>()));
        records.push_back(results[i].record);
    }
    manifest["norm_control_max_drift"] = worst_drift;

    if (s.computations.contains(Computation::bohm_center)) {
        Table table;
        table.header = {"t"};
        std::vector<const std::vector<double>*> columns;
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (all[i].wall == WallCase::dynamic_wall) {
                table.header.push_back("x_" + detail::curve_suffix(s, all[i]));
                columns.push_back(&results[i].center_path);
            }
        }
        const std::vector<double> times = uniform_times(s.window.t0, s.window.t1, s.window.samples);
        for (std::size_t r = 0; r < times.size(); ++r) {
            std::vector<double> row{times[r]};
            for (const auto* col : columns) {
                row.push_back((*col)[r]);
            }
            table.rows.push_back(std::move(row));
        }
        emit("bohm_center", table);
    }

    const auto manifest_path = opt.out_dir / "run_manifest.json";
    write_file(manifest_path, manifest.dump(2) + "\n");
    out.files.push_back(manifest_path);
    out.manifest = std::move(manifest);
    return out;
}

} // namespace qwall::scenario
