#include "bohmflow/commands.hpp"

#include "bohmflow/bohm.hpp"
#include "bohmflow/errors.hpp"
#include "bohmflow/peres.hpp"
#include "bohmflow/propagator.hpp"
#include "bohmflow/svg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <unistd.h>

namespace bohmflow {
namespace {

namespace fs = std::filesystem;

// Plane-wave coefficients of the initial field at z = 0.
SpectralField initial_spectrum(const BeamSpec& beam, const Grid1D& grid) {
    switch (beam.family) {
        case BeamFamily::IdealAiry: {
            const auto band = BandLimitedAiry::for_grid(grid);
            return sample_spectrum(grid, [&](double k) { return band.spectrum(k); });
        }
        case BeamFamily::FiniteAiry:
        case BeamFamily::Gaussian:
        case BeamFamily::GeneralizedGaussian:
            return sample_spectrum(grid, [&](double k) { return spectrum_at(beam, k); });
        case BeamFamily::Peres: return to_spectral(sample_field(beam, grid, 0.0));
    }
    throw ValidationError("family", "unhandled family");
}

svg::Heatmap density_heatmap(const std::vector<ComplexField1D>& snaps, int max_columns = 400) {
    svg::Heatmap h;
    const auto& g = snaps.front().grid();
    const int stride = std::max(1, (g.n() + max_columns - 1) / max_columns);
    h.nx = (g.n() + stride - 1) / stride;
    h.ny = static_cast<int>(snaps.size());
    h.x_min = g.x_min();
    h.x_max = g.x((h.nx - 1) * stride);
    h.y_min = snaps.front().z();
    h.y_max = snaps.back().z();
    for (const auto& s : snaps)
        for (int i = 0; i < h.nx; ++i) h.values.push_back(std::norm(s[i * stride]));
    return h;
}

svg::Panel run_panel(const RunConfig& cfg, const std::vector<ComplexField1D>& snaps) {
    svg::Panel p;
    p.title = std::string(to_string(cfg.beam.family));
    p.x_label = "x";
    p.y_label = "z";
    if (cfg.units) {
        const double sx = cfg.units->x_to_physical(1.0), sz = cfg.units->z_to_physical(1.0);
        p.x_label += " (x 1 = " + format_number(sx) + ")";
        p.y_label += " (x 1 = " + format_number(sz) + ")";
    }
    p.x_min = cfg.grid.x_min;
    p.x_max = cfg.grid.x_max;
    p.y_min = cfg.z_range.z0;
    p.y_max = cfg.z_range.z1 > cfg.z_range.z0 ? cfg.z_range.z1 : cfg.z_range.z0 + 1.0;
    if (snaps.size() > 1) p.heatmap = density_heatmap(snaps);
    return p;
}

std::vector<fs::path> planned_outputs(const RunConfig& cfg) {
    std::vector<fs::path> out{cfg.outputs.csv, cfg.outputs.manifest};
    if (cfg.outputs.svg) out.emplace_back(*cfg.outputs.svg);
    return out;
}

void check_outputs(const RunConfig& cfg) {
    for (const auto& p : planned_outputs(cfg)) ensure_writable(p);
}

void write_manifest(const fs::path& path, const std::string& command, const nlohmann::json& run,
                    const std::vector<ManifestEntry>& files) {
    write_text(path, build_manifest(command, run, files).dump(2) + "\n");
}

double peak_density(const ComplexField1D& f) {
    double peak = 0.0;
    for (const auto& v : f.values())
        if (std::isfinite(std::norm(v))) peak = std::max(peak, std::norm(v));
    return peak;
}

fs::path scratch_dir() {
    static std::atomic<int> counter{0};
    const fs::path dir = fs::temp_directory_path() /
                         ("bohmflow-verify-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(dir);
    return dir;
}

} // namespace

std::vector<ComplexField1D> compute_snapshots(const RunConfig& cfg) {
    const Grid1D grid = make_grid(cfg.grid.x_min, cfg.grid.x_max, cfg.grid.n);
    const auto ladder = snapshot_ladder(cfg.z_range);
    std::vector<ComplexField1D> out;
    if (cfg.method == Method::analytic) {
        for (double z : ladder) out.push_back(sample_field(cfg.beam, grid, z));
        return out;
    }
    SpectralField spec = initial_spectrum(cfg.beam, grid);
    const double z0 = ladder.front();
    for (size_t j = 0; j < spec.coeffs.size(); ++j) {
        const double k = spec.wavenumbers[j];
        spec.coeffs[j] *= std::polar(1.0, -0.5 * k * k * z0);
    }
    spec.z0 = z0;
    ComplexField1D start = from_spectral(spec);
    if (cfg.window) start = truncate_window(start, cfg.window->fraction, cfg.window->profile);
    PropagationPlan plan;
    plan.z_targets.assign(ladder.begin() + 1, ladder.end());
    plan.window = cfg.window;
    plan.auto_window = !cfg.window;
    out.push_back(start);
    for (auto& f : propagate_plan(start, plan)) out.push_back(std::move(f));
    return out;
}

CommandResult cmd_propagate(const RunConfig& cfg) {
    check_outputs(cfg);
    const auto snaps = compute_snapshots(cfg);
    CommandResult r;
    write_text(cfg.outputs.csv, snapshots_csv(snaps));
    r.files.push_back({"csv", cfg.outputs.csv});
    if (cfg.outputs.svg) {
        write_text(*cfg.outputs.svg, svg::render("propagate", {run_panel(cfg, snaps)}));
        r.files.push_back({"svg", *cfg.outputs.svg});
    }
    write_manifest(cfg.outputs.manifest, "propagate", to_json(cfg), r.files);
    r.manifest = cfg.outputs.manifest;
    return r;
}

CommandResult cmd_trace(const RunConfig& cfg) {
    if (!(cfg.z_range.z1 > cfg.z_range.z0)) throw ValidationError("z_range.z1", "trace needs z1 > z0");
    check_outputs(cfg);
    const Grid1D grid = make_grid(cfg.grid.x_min, cfg.grid.x_max, cfg.grid.n);
    const auto x0 = initial_positions(cfg);

    const bool spectral = cfg.method == Method::spectral;
    // The uncut Peres field oscillates without bound in z next to the focus; only the
    // windowed (spectral) field can be traced across it.
    if (!spectral && cfg.beam.family == BeamFamily::Peres && cfg.z_range.z1 >= cfg.beam.z_focus &&
        cfg.z_range.z0 <= cfg.beam.z_focus)
        throw ValidationError("method", "analytic Peres trajectories cannot cross the focus; use method spectral with a window");
    std::vector<ComplexField1D> snaps;
    if (spectral || cfg.outputs.svg) snaps = compute_snapshots(cfg);
    if (spectral && snaps.size() < 2)
        throw ValidationError("z_range.snapshots", "spectral tracing needs at least 2 snapshots");
    const ComplexField1D initial_field = spectral ? snaps.front() : sample_field(cfg.beam, grid, cfg.z_range.z0);

    // Starting points must sit where the initial density is above the floor.
    const double floor = 1e-10 * peak_density(initial_field);
    for (double x : x0) {
        if (x < grid.x_min() || x > grid.x(grid.n() - 1))
            throw ValidationError("trajectories", "initial position " + format_number(x) + " outside the grid");
        const int m = static_cast<int>(std::lround((x - grid.x_min()) / grid.dx())) % grid.n();
        const double rho = spectral ? std::norm(initial_field[m]) : std::norm(field_at(cfg.beam, x, cfg.z_range.z0));
        if (!(rho > floor))
            throw ValidationError("trajectories", "initial position " + format_number(x) + " lies below the density floor");
    }

    IntegrationOptions opts;
    opts.step = cfg.trajectories.step;
    opts.output_every = cfg.trajectories.output_every;
    TrajectorySet set;
    if (spectral) {
        SnapshotProvider provider(snaps);
        set = integrate_trajectories(provider, x0, cfg.z_range.z0, cfg.z_range.z1, opts);
    } else {
        AnalyticProvider provider(cfg.beam, std::make_pair(grid.x_min(), grid.x(grid.n() - 1)));
        set = integrate_trajectories(provider, x0, cfg.z_range.z0, cfg.z_range.z1, opts);
    }

    CommandResult r;
    write_text(cfg.outputs.csv, trajectories_csv(set));
    r.files.push_back({"csv", cfg.outputs.csv});
    if (cfg.outputs.svg) {
        auto panel = run_panel(cfg, snaps);
        for (size_t t = 0; t < set.positions.size(); ++t)
            panel.curves.push_back({set.positions[t], set.z_ladder, "#ffffff", 0.8, false});
        write_text(*cfg.outputs.svg, svg::render("trace", {panel}));
        r.files.push_back({"svg", *cfg.outputs.svg});
    }
    write_manifest(cfg.outputs.manifest, "trace", to_json(cfg), r.files);
    r.manifest = cfg.outputs.manifest;
    return r;
}

VerifyReport cmd_verify(const fs::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw IoError(manifest_path.string(), "cannot read manifest");
    nlohmann::json m;
    try {
        m = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("manifest", std::string("malformed JSON: ") + e.what());
    }
    if (!m.contains("command") || !m.contains("run") || !m.contains("files"))
        throw ValidationError("manifest", "missing command, run or files");

    VerifyReport report;
    report.detail["files"] = nlohmann::json::array();

    const std::string command = m["command"].get<std::string>();
    const fs::path dir = scratch_dir();
    std::vector<ManifestEntry> regenerated;
    try {
        if (command == "propagate" || command == "trace") {
            RunConfig cfg = parse_config(m["run"]);
            cfg.outputs.csv = (dir / fs::path(cfg.outputs.csv).filename()).string();
            if (cfg.outputs.svg) cfg.outputs.svg = (dir / fs::path(*cfg.outputs.svg).filename()).string();
            cfg.outputs.manifest = (dir / "manifest.json").string();
            regenerated = (command == "propagate" ? cmd_propagate(cfg) : cmd_trace(cfg)).files;
        } else if (command == "figure") {
            Overrides ov;
            for (const auto& [k, v] : m["run"].at("overrides").items()) ov[k] = v.get<std::string>();
            regenerated = cmd_figure(m["run"].at("figure").get<std::string>(), ov, dir).files;
        } else {
            throw ValidationError("command", "unknown command '" + command + "' in manifest");
        }
        for (const auto& f : m["files"]) {
            const std::string role = f.at("role").get<std::string>();
            const fs::path path = f.at("path").get<std::string>();
            const std::string stored = f.at("sha256").get<std::string>();
            std::string on_disk = "missing";
            if (fs::exists(path)) on_disk = sha256_file(path);
            std::string rerun = "missing";
            for (const auto& g : regenerated)
                if (g.role == role) rerun = sha256_file(g.path);
            const bool match = stored == on_disk && stored == rerun;
            report.ok = report.ok && match;
            report.detail["files"].push_back(
                {{"role", role}, {"path", path.generic_string()}, {"stored", stored}, {"on_disk", on_disk},
                 {"rerun", rerun}, {"match", match}});
        }
    } catch (...) {
        fs::remove_all(dir);
        throw;
    }
    fs::remove_all(dir);
    report.detail["status"] = report.ok ? "ok" : "mismatch";
    return report;
}

} // namespace bohmflow
