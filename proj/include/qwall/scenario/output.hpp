#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "qwall/numerics/error.hpp"
#include "qwall/scenario/scenario.hpp"

namespace qwall::scenario {

/// 17 significant digits, '.' decimal point, independent of the locale.
inline std::string format_number(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

/// Shortest round-trip form, used in headers and file names.
inline std::string format_short(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

/// "25pi" for integer multiples of pi, the shortest decimal otherwise.
inline std::string pi_label(double v) {
    const double m = v / std::numbers::pi;
    const double r = std::round(m);
    if (std::abs(m - r) < 1e-12 * std::max(1.0, std::abs(m))) {
        return (r == 0.0 ? std::string("0") : format_short(r)) + "pi";
    }
    return format_short(v);
}

/// A rectangular table; column 0 is the abscissa.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    [[nodiscard]] std::string csv() const {
        std::string out;
        for (std::size_t c = 0; c < header.size(); ++c) {
            out += (c ? "," : "") + header[c];
        }
        out += '\n';
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) {
                    out += ',';
                }
                out += format_number(row[c]);
            }
            out += '\n';
        }
        return out;
    }
};

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Writes bytes exactly as given (binary mode, so LF stays LF).
inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw OutputError("cannot open '" + path.string() + "' for writing");
    }
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.close();
    if (!f) {
        throw OutputError("failed writing '" + path.string() + "'");
    }
}

inline void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw OutputError("cannot create output directory '" + dir.string() + "'");
    }
    const auto probe = dir / ".qwall-write-probe";
    {
        std::ofstream f(probe, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw OutputError("output directory '" + dir.string() + "' is not writable");
        }
    }
    std::filesystem::remove(probe, ec);
}

/// Polyline plot of every value column against column 0, with a frame,
/// min/max axis labels and a legend.
inline std::string svg_plot(const Table& t, const std::string& title) {
    constexpr double width = 720.0;
    constexpr double height = 440.0;
    constexpr double left = 90.0;
    constexpr double right = 170.0;
    constexpr double top = 40.0;
    constexpr double bottom = 50.0;
    static const char* colours[] = {"#000000", "#d62728", "#2ca02c", "#1f77b4", "#ff7f0e", "#9467bd", "#8c564b"};

    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = xmin;
    double ymax = -xmin;
    for (const auto& row : t.rows) {
        xmin = std::min(xmin, row[0]);
        xmax = std::max(xmax, row[0]);
        for (std::size_t c = 1; c < row.size(); ++c) {
            if (std::isfinite(row[c])) {
                ymin = std::min(ymin, row[c]);
                ymax = std::max(ymax, row[c]);
            }
        }
    }
    if (!(xmax > xmin)) {
        xmax = xmin + 1.0;
    }
    if (!(ymax > ymin)) {
        const double pad = std::isfinite(ymin) ? std::max(1.0, std::abs(ymin)) * 0.5 : 1.0;
        ymin = std::isfinite(ymin) ? ymin - pad : -1.0;
        ymax = ymin + 2.0 * pad;
    }
    const double pw = width - left - right;
    const double ph = height - top - bottom;
    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };
    auto fmt = [](double v) {
        char buf[32];
        const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
        return std::string(buf, r.ptr);
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
           "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) + "\" fill=\"white\"/>\n";
    out += "<text x=\"" + fmt(left) + "\" y=\"24\" font-size=\"14\">" + title + "</text>\n";
    out += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(pw) + "\" height=\"" + fmt(ph) +
           "\" fill=\"none\" stroke=\"#444\"/>\n";
    if (ymin < 0.0 && ymax > 0.0) {
        out += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(py(0.0)) + "\" x2=\"" + fmt(left + pw) + "\" y2=\"" +
               fmt(py(0.0)) + "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
    }
    out += "<text x=\"" + fmt(left) + "\" y=\"" + fmt(top + ph + 18) + "\" text-anchor=\"middle\">" + fmt(xmin) +
           "</text>\n";
    out += "<text x=\"" + fmt(left + pw) + "\" y=\"" + fmt(top + ph + 18) + "\" text-anchor=\"middle\">" +
           fmt(xmax) + "</text>\n";
    out += "<text x=\"" + fmt(left + pw / 2) + "\" y=\"" + fmt(top + ph + 38) + "\" text-anchor=\"middle\">" +
           t.header[0] + "</text>\n";
    out += "<text x=\"" + fmt(left - 6) + "\" y=\"" + fmt(top + 4) + "\" text-anchor=\"end\">" + fmt(ymax) +
           "</text>\n";
    out += "<text x=\"" + fmt(left - 6) + "\" y=\"" + fmt(top + ph + 4) + "\" text-anchor=\"end\">" + fmt(ymin) +
           "</text>\n";

    for (std::size_t c = 1; c < t.header.size(); ++c) {
        const char* colour = colours[(c - 1) % std::size(colours)];
        out += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (const auto& row : t.rows) {
            if (!std::isfinite(row[c])) {
                continue;
            }
            out += (first ? "" : " ") + fmt(px(row[0])) + "," + fmt(py(row[c]));
            first = false;
        }
        out += "\"/>\n";
        const double ly = top + 10.0 + 18.0 * static_cast<double>(c - 1);
        out += "<line x1=\"" + fmt(left + pw + 12) + "\" y1=\"" + fmt(ly) + "\" x2=\"" + fmt(left + pw + 36) +
               "\" y2=\"" + fmt(ly) + "\" stroke=\"" + colour + "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + fmt(left + pw + 42) + "\" y=\"" + fmt(ly + 4) + "\">" + t.header[c] + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

inline nlohmann::ordered_json physics_json(const PhysicsConfig& p) {
    return {{"hbar", p.hbar},     {"mass", p.mass}, {"ell0", p.ell0}, {"ell1", p.ell1},
            {"sigma0", p.sigma0}, {"u", p.u},       {"k", p.k},       {"n_terms", p.n_terms}};
}

inline nlohmann::ordered_json scenario_json(const Scenario& s) {
    nlohmann::ordered_json j;
    j["name"] = s.name;
    j["physics"] = physics_json(s.physics);
    auto& states = j["state"] = nlohmann::ordered_json::array();
    for (StateKind k : s.states) {
        states.push_back(std::string(to_string(k)));
    }
    auto& cases = j["cases"] = nlohmann::ordered_json::array();
    for (WallCase c : s.cases) {
        cases.push_back(std::string(to_string(c)));
    }
    j["u"] = s.u_values;
    j["k"] = s.k_values;
    auto& comps = j["computations"] = nlohmann::ordered_json::array();
    for (Computation c : s.computations) {
        comps.push_back(std::string(to_string(c)));
    }
    j["formulation"] = std::string(to_string(s.formulation));
    j["t0"] = s.window.t0;
    j["t1"] = s.window.t1;
    j["samples"] = s.window.samples;
    j["quad_panels"] = s.quad_panels;
    j["traj_dt"] = s.traj_dt;
    j["starts"] = s.starts;
    j["snapshot_points"] = s.snapshot_points;
    j["oracle_points"] = s.oracle_grid.points;
    j["oracle_dt"] = s.oracle_grid.dt;
    return j;
}

} // namespace qwall::scenario
