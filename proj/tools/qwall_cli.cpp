// qwall: runs the moving-wall scenarios and writes CSV / SVG / manifest files.
//
// Exit codes: 0 success, 2 usage or invalid configuration, 3 I/O failure,
// 4 numeric failure.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "qwall/scenario/config.hpp"
#include "qwall/scenario/runner.hpp"
#include "qwall/scenario/scenario.hpp"
#include "qwall/version.hpp"

namespace {

constexpr int exit_usage = 2;
constexpr int exit_io = 3;
constexpr int exit_numeric = 4;

std::string preset_list() {
    std::string out;
    for (const auto& name : qwall::scenario::preset_names()) {
        out += (out.empty() ? "" : ", ") + name;
    }
    return out;
}

const char* describe(const std::string& name) {
    if (name == "fig1-initial") return "initial wavefunction snapshot, TBS and TGP";
    if (name == "fig2-trajectories") return "Bohm paths from x_c and x_c +/- 2 sigma0, static and dynamic";
    if (name == "fig3-xmean") return "<x>(t), static and dynamic, with the Bohm path from <x>(0)";
    if (name == "fig4-force-long") return "f_qm(t) to t = 0.003, static and dynamic";
    if (name == "fig5-tbs-force-k") return "TBS f_qm(t) for k = +/-25pi, +/-50pi, +/-75pi";
    if (name == "fig6-tgp-force-k") return "TGP f_qm(t) for k = +/-25pi, +/-50pi, +/-75pi";
    if (name == "fig7-force-u") return "f_qm(t) for u = 20pi, 100pi, 200pi";
    return "";
}

} // namespace

int main(int argc, char** argv) {
    using namespace qwall::scenario;

    CLI::App app{"Particle in a box with one uniformly moving wall"};
    app.set_version_flag("--version", std::string(qwall::version));
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "Run a config file or a named preset");
    std::string config_path;
    std::string preset_name;
    std::string out_dir = "qwall-out";
    bool svg = false;
    int threads = 1;
    auto* config_opt = run_cmd->add_option("--config", config_path, "Scenario file (flat YAML)");
    auto* preset_opt = run_cmd->add_option("--preset", preset_name, "Preset name (see list-presets)");
    config_opt->excludes(preset_opt);
    run_cmd->add_flag("--svg", svg, "Also write one SVG plot per CSV");
    run_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
    run_cmd->add_option("--threads", threads, "Curves computed concurrently")->check(CLI::Range(1, 256))->capture_default_str();

    auto* list_cmd = app.add_subcommand("list-presets", "Print the preset names");

    auto* validate_cmd = app.add_subcommand("validate", "Parse and check a config file without computing");
    std::string validate_path;
    validate_cmd->add_option("--config", validate_path, "Scenario file (flat YAML)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (list_cmd->parsed()) {
            for (const auto& name : preset_names()) {
                std::cout << name << "\t" << describe(name) << "\n";
            }
            return 0;
        }
        if (validate_cmd->parsed()) {
            const Scenario s = load_config(validate_path);
            validate(s);
            std::cout << "ok: " << s.name << " (" << curves(s).size() << " curves)\n";
            return 0;
        }

        Scenario s;
        if (preset_opt->count() > 0) {
            const auto p = preset(preset_name);
            if (!p) {
                std::cerr << "error: unknown preset '" << preset_name << "'; valid presets: " << preset_list() << "\n";
                return exit_usage;
            }
            s = *p;
        } else if (config_opt->count() > 0) {
            s = load_config(config_path);
        } else {
            std::cerr << "error: run needs --config FILE or --preset NAME\n";
            return exit_usage;
        }
        validate(s);
        const RunResult r = run(s, {out_dir, svg, threads});
        for (const auto& f : r.files) {
            std::cout << f.string() << "\n";
        }
        return 0;
    } catch (const RunError& e) {
        std::cerr << "error: " << e.stage() << ": " << e.what() << "\n";
        return exit_numeric;
    } catch (const OutputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const qwall::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const qwall::DomainExpired& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const qwall::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numeric;
    }
}
