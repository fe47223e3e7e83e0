#include "bohmflow/airy.hpp"
#include "bohmflow/bohm.hpp"
#include "bohmflow/commands.hpp"
#include "bohmflow/errors.hpp"
#include "bohmflow/parallel.hpp"
#include "bohmflow/peres.hpp"
#include "bohmflow/svg.hpp"

#include <charconv>
#include <fstream>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bohmflow {
namespace {

namespace fs = std::filesystem;
using Params = std::map<std::string, double>;

// Path override naming a CSV of extra points (columns x,y in the first panel's displayed axes).
constexpr const char* kScatterKey = "scatter";

const std::map<std::string, Params>& presets() {
    static const std::map<std::string, Params> table = {
        {"fig1",
         {{"x_min", -16.0}, {"x_max", 24.0}, {"nx", 321}, {"nz", 121}, {"z_end_cm", 30.0}, {"lambda0_nm", 500.0},
          {"x0_um", 53.0}, {"count", 20}, {"maxima", 10}, {"step", 0.0}, {"physical_axes", 0}}},
        {"fig2",
         {{"gamma", 0.11}, {"x_min", -16.0}, {"x_max", 24.0}, {"nx", 321}, {"nz", 121}, {"z_end_cm", 30.0},
          {"lambda0_nm", 500.0}, {"x0_um", 53.0}, {"count", 20}, {"maxima", 10}, {"step", 0.0},
          {"physical_axes", 0}}},
        {"fig3",
         {{"z_focus", 1.0}, {"x_half", 20.0}, {"nx", 201}, {"z_end", 2.0}, {"nz", 101}, {"count", 51},
          {"range_half", 15.0}, {"inner_count", 21}, {"inner_level", 0.3}, {"zoom_x_half", 1.5},
          {"zoom_z0", 0.7}, {"zoom_z1", 1.3}, {"zoom_nx", 121}, {"zoom_nz", 61}, {"step", 0.0},
          {"profile_nx", 401}, {"cut", 15.0}, {"grid_half", 40.0}, {"grid_n", 2048}}},
        {"fig4",
         {{"z_focus", 1.0}, {"x_half", 10.0}, {"nx", 401}, {"sigma0_min", 0.05}, {"sigma0_max", 5.0},
          {"samples", 400}}},
        {"fig5",
         {{"z_focus", 1.0}, {"x_half", 8.0}, {"nx", 201}, {"z_end", 2.0}, {"nz", 101}, {"count", 51},
          {"range_half", 5.0}, {"zoom_x_half", 0.6}, {"zoom_z0", 0.8}, {"zoom_z1", 1.2}, {"zoom_nx", 121},
          {"zoom_nz", 81}, {"step", 0.0}}},
    };
    return table;
}

Params resolve(const std::string& name, const Overrides& overrides) {
    const auto it = presets().find(name);
    if (it == presets().end()) throw ValidationError("figure", "unknown figure '" + name + "' (fig1..fig5)");
    Params p = it->second;
    for (const auto& [key, text] : overrides) {
        if (key == kScatterKey) continue;
        if (!p.count(key)) throw ValidationError(key, "not a parameter of " + name);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
            throw ValidationError(key, "expected a number, got '" + text + "'");
        p[key] = v;
    }
    return p;
}

int count_param(const Params& p, const std::string& key, int min_value) {
    const double v = p.at(key);
    if (v != std::floor(v) || v < min_value)
        throw ValidationError(key, "must be an integer >= " + std::to_string(min_value));
    return static_cast<int>(v);
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = n == 1 ? a : (i == n - 1 ? b : a + (b - a) * i / (n - 1));
    return v;
}

// Field sampled on an x-z lattice; values[iz * nx + ix].
struct Lattice {
    std::vector<double> x, z;
    std::vector<cplx> psi;
};

Lattice sample_lattice(const BeamSpec& spec, std::vector<double> x, std::vector<double> z) {
    Lattice l{std::move(x), std::move(z), {}};
    const size_t nx = l.x.size();
    l.psi.resize(nx * l.z.size());
    parallel_for(l.psi.size(), [&](size_t i) {
        try {
            l.psi[i] = field_at(spec, l.x[i % nx], l.z[i / nx]);
        } catch (const SingularError&) {
            l.psi[i] = cplx(std::numeric_limits<double>::infinity(), 0.0);
        }
    });
    return l;
}

Lattice sample_lattice(const SpectralField& spec, std::vector<double> x, std::vector<double> z) {
    Lattice l{std::move(x), std::move(z), {}};
    const size_t nx = l.x.size();
    l.psi.resize(nx * l.z.size());
    parallel_for(l.psi.size(), [&](size_t i) { l.psi[i] = spec.evaluate(l.x[i % nx], l.z[i / nx]); });
    return l;
}

svg::Heatmap heatmap(const Lattice& l) {
    svg::Heatmap h;
    h.x_min = l.x.front();
    h.x_max = l.x.back();
    h.y_min = l.z.front();
    h.y_max = l.z.back();
    h.nx = static_cast<int>(l.x.size());
    h.ny = static_cast<int>(l.z.size());
    for (const auto& v : l.psi) h.values.push_back(std::norm(v));
    return h;
}

std::string lattice_csv(const Lattice& l) {
    std::string s = "z,x,re_psi,im_psi,density\n";
    for (size_t i = 0; i < l.psi.size(); ++i) {
        const cplx v = l.psi[i];
        s += format_number(l.z[i / l.x.size()]) + ',' + format_number(l.x[i % l.x.size()]) + ',' +
             format_number(v.real()) + ',' + format_number(v.imag()) + ',' + format_number(std::norm(v)) + '\n';
    }
    return s;
}

struct Profile {
    std::string id;
    double z;
    std::vector<double> x;
    std::vector<double> density;
};

Profile profile(const BeamSpec& spec, const std::string& id, double z, const std::vector<double>& x) {
    const auto l = sample_lattice(spec, x, {z});
    Profile p{id, z, x, {}};
    for (const auto& v : l.psi) p.density.push_back(std::norm(v));
    return p;
}

std::string profiles_csv(const std::vector<Profile>& profiles) {
    std::string s = "profile_id,z,x,density\n";
    for (const auto& p : profiles)
        for (size_t i = 0; i < p.x.size(); ++i)
            s += p.id + ',' + format_number(p.z) + ',' + format_number(p.x[i]) + ',' + format_number(p.density[i]) + '\n';
    return s;
}

struct Line {
    std::string id;
    std::vector<double> z, x;
};

std::string lines_csv(const std::vector<Line>& lines) {
    std::string s = "line_id,z,x\n";
    for (const auto& l : lines)
        for (size_t i = 0; i < l.z.size(); ++i) s += l.id + ',' + format_number(l.z[i]) + ',' + format_number(l.x[i]) + '\n';
    return s;
}

TrajectorySet trace(const BeamSpec& spec, const std::vector<double>& x0, double z1, double step) {
    AnalyticProvider provider(spec);
    IntegrationOptions opts;
    opts.step = step;
    return integrate_trajectories(provider, x0, 0.0, z1, opts);
}


void add_trajectories(svg::Panel& panel, const TrajectorySet& set, const std::string& color, double width) {
    for (const auto& row : set.positions) panel.curves.push_back({row, set.z_ladder, color, width, false});
}

svg::Panel profile_panel(const std::string& title, const std::vector<Profile>& profiles,
                         const std::vector<std::string>& colors) {
    svg::Panel p;
    p.title = title;
    p.x_label = "x";
    p.y_label = "intensity";
    p.x_min = profiles.front().x.front();
    p.x_max = profiles.front().x.back();
    double top = 0.0;
    for (size_t i = 0; i < profiles.size(); ++i) {
        for (double d : profiles[i].density)
            if (std::isfinite(d)) top = std::max(top, d);
        p.curves.push_back({profiles[i].x, profiles[i].density, colors[i % colors.size()], 1.2, false});
    }
    p.y_min = 0.0;
    p.y_max = top > 0.0 ? 1.05 * top : 1.0;
    return p;
}

// Rescales a panel's x and y axes (and everything drawn on it) for physical-unit display.
void rescale(svg::Panel& p, double sx, double sy, const std::string& x_label, const std::string& y_label) {
    p.x_min *= sx;
    p.x_max *= sx;
    p.y_min *= sy;
    p.y_max *= sy;
    p.x_label = x_label;
    p.y_label = y_label;
    if (p.heatmap) {
        p.heatmap->x_min *= sx;
        p.heatmap->x_max *= sx;
        p.heatmap->y_min *= sy;
        p.heatmap->y_max *= sy;
    }
    for (auto& c : p.curves) {
        for (auto& v : c.x) v *= sx;
        for (auto& v : c.y) v *= sy;
    }
}

void overlay_scatter(svg::Panel& panel, const Overrides& ov) {
    const auto it = ov.find(kScatterKey);
    if (it == ov.end()) return;
    std::ifstream in(it->second);
    if (!in) throw IoError(it->second, "cannot read scatter CSV");
    svg::Curve c{{}, {}, "#d62728", 1.2, false, true};
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        double x = 0.0, y = 0.0;
        const char* end = line.data() + line.size();
        const bool ok = comma != std::string::npos &&
                        std::from_chars(line.data(), line.data() + comma, x).ptr == line.data() + comma &&
                        std::from_chars(line.data() + comma + 1, end, y).ptr == end;
        if (!ok) {
            if (row == 1) continue;  // header
            throw ValidationError(kScatterKey, "row " + std::to_string(row) + " is not 'x,y'");
        }
        c.x.push_back(x);
        c.y.push_back(y);
    }
    panel.curves.push_back(std::move(c));
}

class FigureWriter {
  public:
    FigureWriter(std::string name, fs::path dir) : name_(std::move(name)), dir_(std::move(dir)) {}

    fs::path path(const std::string& suffix) const { return dir_ / (name_ + "_" + suffix); }

    void check(const std::vector<std::string>& suffixes) const {
        for (const auto& s : suffixes) ensure_writable(path(s));
        ensure_writable(dir_ / "manifest.json");
    }

    void write(const std::string& suffix, const std::string& text) {
        const auto p = path(suffix);
        write_text(p, text);
        files_.push_back({suffix, p});
    }

    CommandResult finish(const Overrides& overrides, const Params& params) {
        nlohmann::json run;
        run["figure"] = name_;
        run["overrides"] = nlohmann::json::object();
        for (const auto& [k, v] : overrides) run["overrides"][k] = v;
        run["parameters"] = nlohmann::json::object();
        for (const auto& [k, v] : params) run["parameters"][k] = v;
        const auto manifest = dir_ / "manifest.json";
        write_text(manifest, build_manifest("figure", run, files_).dump(2) + "\n");
        return {files_, manifest};
    }

  private:
    std::string name_;
    fs::path dir_;
    std::vector<ManifestEntry> files_;
};

CommandResult airy_figure(const std::string& name, const Params& p, const Overrides& ov, const fs::path& dir) {
    const bool finite = name == "fig2";
    const BeamSpec spec = finite ? BeamSpec::finite_airy(p.at("gamma")) : BeamSpec::ideal_airy();
    validate(spec);
    const auto units = UnitsMap::optical(p.at("lambda0_nm") * 1e-9, 1.0, p.at("x0_um") * 1e-6);
    const double z_end = units.z_from_physical(p.at("z_end_cm") * 1e-2);
    const int nx = count_param(p, "nx", 2), nz = count_param(p, "nz", 2);
    const int count = count_param(p, "count", 1), maxima = count_param(p, "maxima", 1);
    if (!(p.at("x_max") > p.at("x_min"))) throw ValidationError("x_max", "must exceed x_min");
    if (!(z_end > 0.0)) throw ValidationError("z_end_cm", "must be > 0");

    FigureWriter out(name, dir);
    out.check({"density.csv", "trajectories.csv", "nodal_lines.csv", "profiles.csv", "figure.svg"});

    const auto xs = linspace(p.at("x_min"), p.at("x_max"), nx);
    const auto zs = linspace(0.0, z_end, nz);
    const auto lattice = sample_lattice(spec, xs, zs);

    const double lead = airy_prime_zero(1), deep = airy_prime_zero(maxima);
    std::vector<double> x0 = count == 1 ? std::vector<double>{lead} : linspace(deep, lead, count);
    const auto set = trace(spec, x0, z_end, p.at("step"));

    std::vector<Line> lines;
    const auto zl = linspace(0.0, z_end, 101);
    for (int k = 1; k <= maxima; ++k) {
        Line l{"zero_" + std::to_string(k), zl, {}};
        for (double z : zl) l.x.push_back(airy_zero(k) + z * z / 4.0);
        lines.push_back(std::move(l));
    }
    Line main{"main_maximum", zl, {}};
    for (double z : zl) main.x.push_back(lead + z * z / 4.0);
    lines.push_back(main);

    std::vector<Profile> profiles;
    const std::vector<double> cms = finite ? std::vector<double>{0.0, 10.0, 20.0, p.at("z_end_cm")}
                                           : std::vector<double>{0.0, p.at("z_end_cm")};
    for (double cm : cms) {
        const double z = units.z_from_physical(cm * 1e-2);
        profiles.push_back(profile(spec, "z_cm=" + format_number(cm), z, xs));
    }

    svg::Panel density;
    density.title = finite ? "finite-energy Airy beam" : "ideal Airy beam";
    density.x_label = "x";
    density.y_label = "z";
    density.x_min = xs.front();
    density.x_max = xs.back();
    density.y_min = 0.0;
    density.y_max = z_end;
    density.heatmap = heatmap(lattice);
    add_trajectories(density, set, "#ffffff", 0.8);
    for (const auto& l : lines)
        density.curves.push_back({l.x, l.z, l.id == "main_maximum" ? "#000000" : "#ffd700", l.id == "main_maximum" ? 1.6 : 1.0,
                                  l.id != "main_maximum"});
    std::vector<svg::Panel> panels{density};
    for (const auto& pr : profiles) panels.push_back(profile_panel("profile at z = " + pr.id.substr(5) + " cm", {pr}, {"#1f4e9c"}));
    if (p.at("physical_axes") != 0.0) {
        const double sx = units.x_to_physical(1.0) * 1e6, sz = units.z_to_physical(1.0) * 1e2;
        rescale(panels[0], sx, sz, "x (um)", "z (cm)");
        for (size_t i = 1; i < panels.size(); ++i) rescale(panels[i], sx, 1.0, "x (um)", "intensity");
    }
    overlay_scatter(panels[0], ov);

    out.write("density.csv", lattice_csv(lattice));
    out.write("trajectories.csv", trajectories_csv(set));
    out.write("nodal_lines.csv", lines_csv(lines));
    out.write("profiles.csv", profiles_csv(profiles));
    out.write("figure.svg", svg::render(name + ": " + density.title, panels, 3));
    return out.finish(ov, p);
}

CommandResult peres_figure(const Params& p, const Overrides& ov, const fs::path& dir) {
    const BeamSpec spec = BeamSpec::peres(p.at("z_focus"));
    validate(spec);
    const int nx = count_param(p, "nx", 2), nz = count_param(p, "nz", 2);
    const int count = count_param(p, "count", 1), inner_count = count_param(p, "inner_count", 1);
    const int zoom_nx = count_param(p, "zoom_nx", 2), zoom_nz = count_param(p, "zoom_nz", 2);
    const int profile_nx = count_param(p, "profile_nx", 2);
    const double level = p.at("inner_level");
    if (!(level > 0.0 && level < 1.0)) throw ValidationError("inner_level", "must lie in (0, 1)");
    if (!(p.at("zoom_z1") > p.at("zoom_z0")) || p.at("zoom_z0") < 0.0)
        throw ValidationError("zoom_z1", "zoom range must be increasing and >= 0");

    FigureWriter out("fig3", dir);
    out.check({"density.csv", "zoom_density.csv", "trajectories.csv", "inner_trajectories.csv", "profiles.csv",
               "figure.svg"});

    const double cut = p.at("cut"), grid_half = p.at("grid_half");
    if (!(cut > 0.0) || !(grid_half > 2.0 * cut / 0.9)) throw ValidationError("grid_half", "must exceed twice the cut band");
    const int grid_n = count_param(p, "grid_n", 16);
    if (grid_n % 2 != 0) throw ValidationError("grid_n", "must be even");
    // The uncut field oscillates ever faster in z next to the focus (the far tail's rays
    // arrive there), so its trajectories cannot be followed through z_focus. Work with the cut data.
    const auto field = truncated_peres(spec.z_focus, cut, make_grid(-grid_half, grid_half, grid_n));

    const double xh = p.at("x_half"), z_end = p.at("z_end"), rh = p.at("range_half");
    if (rh > cut / 0.9) throw ValidationError("range_half", "launch range lies outside the cut field");
    const auto full = sample_lattice(field, linspace(-xh, xh, nx), linspace(0.0, z_end, nz));
    const double zxh = p.at("zoom_x_half");
    const auto zoom = sample_lattice(field, linspace(-zxh, zxh, zoom_nx), linspace(p.at("zoom_z0"), p.at("zoom_z1"), zoom_nz));

    // Half-width at which the initial density (1 + x^2)^(-2/3) falls to `level` of its peak.
    const double inner = std::sqrt(std::pow(level, -1.5) - 1.0);
    SpectralProvider provider(field, spec.z_focus);
    IntegrationOptions opts;
    opts.step = p.at("step");
    const auto outer_set = integrate_trajectories(provider, linspace(-rh, rh, count), 0.0, z_end, opts);
    const auto inner_set = integrate_trajectories(provider, linspace(-inner, inner, inner_count), 0.0, z_end, opts);

    const auto launch = sample_lattice(field, linspace(-xh, xh, profile_nx), {0.0});
    Profile prof{"z=0", 0.0, launch.x, {}};
    for (const auto& v : launch.psi) prof.density.push_back(std::norm(v));

    auto density_panel = [&](const std::string& title, const Lattice& l, const TrajectorySet& set) {
        svg::Panel panel;
        panel.title = title;
        panel.x_label = "x";
        panel.y_label = "z";
        panel.x_min = l.x.front();
        panel.x_max = l.x.back();
        panel.y_min = l.z.front();
        panel.y_max = l.z.back();
        panel.heatmap = heatmap(l);
        add_trajectories(panel, set, "#ffffff", 0.7);
        return panel;
    };
    auto prof_panel = profile_panel("(c) initial intensity", {prof}, {"#000000"});
    const double outer_level = std::pow(1.0 + rh * rh, -2.0 / 3.0);
    prof_panel.curves.push_back({{-rh, rh}, {outer_level, outer_level}, "#d62728", 2.0, false});
    prof_panel.curves.push_back({{-inner, inner}, {level, level}, "#1f77b4", 2.0, false});

    std::vector<svg::Panel> panels{density_panel("(a) Peres beam", full, outer_set),
                                   density_panel("(b) focal region", zoom, outer_set), prof_panel,
                                   density_panel("(d) inner launch set", full, inner_set)};

    overlay_scatter(panels[0], ov);
    out.write("density.csv", lattice_csv(full));
    out.write("zoom_density.csv", lattice_csv(zoom));
    out.write("trajectories.csv", trajectories_csv(outer_set));
    out.write("inner_trajectories.csv", trajectories_csv(inner_set));
    out.write("profiles.csv", profiles_csv({prof}));
    out.write("figure.svg", svg::render("fig3: Peres self-focusing", panels, 2));
    return out.finish(ov, p);
}

CommandResult gaussian_comparison_figure(const Params& p, const Overrides& ov, const fs::path& dir) {
    const double zf = p.at("z_focus");
    const int nx = count_param(p, "nx", 2), samples = count_param(p, "samples", 2);
    if (!(p.at("sigma0_min") > 0.0) || !(p.at("sigma0_max") > p.at("sigma0_min")))
        throw ValidationError("sigma0_max", "need 0 < sigma0_min < sigma0_max");
    const double sg0 = peres_sigma_g0();
    const auto [s_plus, s_minus] = sigma_pair(sg0, zf);

    FigureWriter out("fig4", dir);
    out.check({"profiles.csv", "width_phase.csv", "figure.svg"});

    const auto xs = linspace(-p.at("x_half"), p.at("x_half"), nx);
    const auto gauss = profile(BeamSpec::generalized_gaussian(s_plus, zf), "gaussian", 0.0, xs);
    const auto peres = profile(BeamSpec::peres(zf), "peres", 0.0, xs);

    std::string table = "sigma0,sigma_g0,theta_g0_over_pi\n";
    std::vector<double> s0s = linspace(p.at("sigma0_min"), p.at("sigma0_max"), samples), widths, phases;
    for (double s0 : s0s) {
        const auto w = width_phase(s0, zf, 0.0);
        widths.push_back(w.modulus);
        phases.push_back(w.arg / std::numbers::pi);
        table += format_number(s0) + ',' + format_number(w.modulus) + ',' + format_number(w.arg / std::numbers::pi) + '\n';
    }

    auto a = profile_panel("(a) initial intensity", {gauss, peres}, {"#1f4e9c", "#808080"});
    a.curves[1].dashed = true;

    svg::Panel b;
    b.title = "(b) initial width";
    b.x_label = "sigma0";
    b.y_label = "sigma_g0";
    b.x_min = s0s.front();
    b.x_max = s0s.back();
    b.y_min = 0.0;
    b.y_max = std::min(*std::max_element(widths.begin(), widths.end()), 4.0 * sg0);
    b.curves.push_back({s0s, widths, "#000000", 1.4, false});
    b.curves.push_back({{s0s.front(), s0s.back()}, {sg0, sg0}, "#d62728", 1.2, true});

    svg::Panel c;
    c.title = "(b) initial phase";
    c.x_label = "sigma0";
    c.y_label = "theta_g0 / pi";
    c.x_min = s0s.front();
    c.x_max = s0s.back();
    c.y_min = -0.5;
    c.y_max = 0.0;
    c.curves.push_back({s0s, phases, "#000000", 1.4, false});
    for (double s : {s_plus, s_minus}) {
        b.curves.push_back({{s, s}, {b.y_min, b.y_max}, "#1f77b4", 1.0, true});
        c.curves.push_back({{s, s}, {c.y_min, c.y_max}, "#1f77b4", 1.0, true});
    }

    overlay_scatter(a, ov);
    out.write("profiles.csv", profiles_csv({gauss, peres}));
    out.write("width_phase.csv", table);
    out.write("figure.svg", svg::render("fig4: Gaussian counterpart of the Peres beam", {a, b, c}, 3));
    return out.finish(ov, p);
}

CommandResult focusing_gaussian_figure(const Params& p, const Overrides& ov, const fs::path& dir) {
    const double zf = p.at("z_focus");
    const int nx = count_param(p, "nx", 2), nz = count_param(p, "nz", 2), count = count_param(p, "count", 1);
    const int zoom_nx = count_param(p, "zoom_nx", 2), zoom_nz = count_param(p, "zoom_nz", 2);
    const auto [s_plus, s_minus] = sigma_pair(peres_sigma_g0(), zf);
    const BeamSpec wide = BeamSpec::generalized_gaussian(s_plus, zf);
    const BeamSpec narrow = BeamSpec::generalized_gaussian(s_minus, zf);

    FigureWriter out("fig5", dir);
    out.check({"plus_density.csv", "minus_density.csv", "minus_zoom_density.csv", "plus_trajectories.csv",
               "minus_trajectories.csv", "figure.svg"});

    const double xh = p.at("x_half"), z_end = p.at("z_end"), zxh = p.at("zoom_x_half");
    const auto xs = linspace(-xh, xh, nx);
    const auto zs = linspace(0.0, z_end, nz);
    const auto plus = sample_lattice(wide, xs, zs);
    const auto minus = sample_lattice(narrow, xs, zs);
    const auto zoom = sample_lattice(narrow, linspace(-zxh, zxh, zoom_nx), linspace(p.at("zoom_z0"), p.at("zoom_z1"), zoom_nz));
    const auto x0 = linspace(-p.at("range_half"), p.at("range_half"), count);
    const auto plus_set = trace(wide, x0, z_end, p.at("step"));
    const auto minus_set = trace(narrow, x0, z_end, p.at("step"));

    auto panel = [&](const std::string& title, const Lattice& l, const TrajectorySet& set) {
        svg::Panel q;
        q.title = title;
        q.x_label = "x";
        q.y_label = "z";
        q.x_min = l.x.front();
        q.x_max = l.x.back();
        q.y_min = l.z.front();
        q.y_max = l.z.back();
        q.heatmap = heatmap(l);
        add_trajectories(q, set, "#ffffff", 0.7);
        return q;
    };
    std::vector<svg::Panel> panels{panel("(a) sigma0 = " + format_number(s_plus).substr(0, 5), plus, plus_set),
                                   panel("(b) sigma0 = " + format_number(s_minus).substr(0, 5), minus, minus_set),
                                   panel("(c) focal region", zoom, minus_set)};

    overlay_scatter(panels[0], ov);
    out.write("plus_density.csv", lattice_csv(plus));
    out.write("minus_density.csv", lattice_csv(minus));
    out.write("minus_zoom_density.csv", lattice_csv(zoom));
    out.write("plus_trajectories.csv", trajectories_csv(plus_set));
    out.write("minus_trajectories.csv", trajectories_csv(minus_set));
    out.write("figure.svg", svg::render("fig5: focusing Gaussian beams", panels, 3));
    return out.finish(ov, p);
}

} // namespace

std::map<std::string, double> figure_parameters(const std::string& name) { return resolve(name, {}); }

CommandResult cmd_figure(const std::string& name, const Overrides& overrides, const fs::path& out_dir) {
    const Params p = resolve(name, overrides);
    if (name == "fig1" || name == "fig2") return airy_figure(name, p, overrides, out_dir);
    if (name == "fig3") return peres_figure(p, overrides, out_dir);
    if (name == "fig4") return gaussian_comparison_figure(p, overrides, out_dir);
    return focusing_gaussian_figure(p, overrides, out_dir);
}

} // namespace bohmflow
