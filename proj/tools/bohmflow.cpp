#include "bohmflow/commands.hpp"
#include "bohmflow/errors.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kNumerical = 1, kConfig = 2 };

int fail(int code, json err) {
    std::cerr << err.dump() << "\n";
    return code;
}

json summary(const std::string& command, const bohmflow::CommandResult& r) {
    json files = json::array();
    for (const auto& f : r.files) files.push_back({{"role", f.role}, {"path", f.path.generic_string()}});
    return {{"status", "ok"}, {"command", command}, {"files", files}, {"manifest", r.manifest.generic_string()}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bohmian trajectories of paraxial beams"};
    app.require_subcommand(1);

    std::string config_path, manifest_path, figure_name, out_dir;
    std::vector<std::string> sets;

    auto* propagate = app.add_subcommand("propagate", "Write field snapshots over the z range");
    propagate->add_option("--config", config_path, "run configuration JSON")->required();
    auto* trace = app.add_subcommand("trace", "Integrate Bohmian trajectories");
    trace->add_option("--config", config_path, "run configuration JSON")->required();
    auto* figure = app.add_subcommand("figure", "Emit a figure preset (fig1..fig5)");
    figure->add_option("name", figure_name, "preset name")->required();
    figure->add_option("--set", sets, "override a preset parameter, key=value")->take_all();
    figure->add_option("--out", out_dir, "output directory (default figures/<name>)");
    auto* verify = app.add_subcommand("verify", "Re-run a manifest and compare checksums");
    verify->add_option("--manifest", manifest_path, "manifest JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(kConfig, {{"error", "usage"}, {"message", e.what()}});
    }

    try {
        if (*propagate || *trace) {
            const auto cfg = bohmflow::load_config(config_path);
            const std::string cmd = *propagate ? "propagate" : "trace";
            const auto r = *propagate ? bohmflow::cmd_propagate(cfg) : bohmflow::cmd_trace(cfg);
            std::cout << summary(cmd, r).dump() << "\n";
        } else if (*figure) {
            bohmflow::Overrides ov;
            for (const auto& s : sets) {
                const auto eq = s.find('=');
                if (eq == std::string::npos || eq == 0)
                    return fail(kConfig, {{"error", "validation"}, {"field", "--set"}, {"message", "expected key=value, got '" + s + "'"}});
                ov[s.substr(0, eq)] = s.substr(eq + 1);
            }
            const std::string dir = out_dir.empty() ? "figures/" + figure_name : out_dir;
            std::cout << summary("figure", bohmflow::cmd_figure(figure_name, ov, dir)).dump() << "\n";
        } else {
            const auto report = bohmflow::cmd_verify(manifest_path);
            std::cout << report.detail.dump() << "\n";
            if (!report.ok) return fail(kNumerical, {{"error", "verify_mismatch"}, {"message", "regenerated files differ from the manifest"}});
        }
    } catch (const bohmflow::ValidationError& e) {
        return fail(kConfig, {{"error", "validation"}, {"field", e.field()}, {"message", e.what()}});
    } catch (const bohmflow::IoError& e) {
        return fail(kConfig, {{"error", "io"}, {"path", e.path()}, {"message", e.what()}});
    } catch (const bohmflow::NumericalError& e) {
        return fail(kNumerical, {{"error", "numerical"}, {"message", e.what()}});
    } catch (const std::exception& e) {
        return fail(kNumerical, {{"error", "internal"}, {"message", e.what()}});
    }
    return kOk;
}
