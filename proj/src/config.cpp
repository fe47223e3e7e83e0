#include "bohmflow/config.hpp"

#include "bohmflow/airy.hpp"
#include "bohmflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace bohmflow {
namespace {

using nlohmann::json;

// Reads one JSON object, remembering which keys were consumed so leftovers can be rejected.
class Reader {
  public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ValidationError(path_.empty() ? "config" : path_, "expected a JSON object");
    }

    /// Present and not null. Marks the key as consumed either way.
    bool has(const std::string& key) {
        seen_.insert(key);
        return j_.contains(key) && !j_.at(key).is_null();
    }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        if (!j_.contains(key)) throw ValidationError(where(key), "missing required key");
        return j_.at(key);
    }

    double number(const std::string& key) {
        const auto& v = raw(key);
        if (!v.is_number()) throw ValidationError(where(key), "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw ValidationError(where(key), "must be finite");
        return d;
    }
    double number(const std::string& key, double fallback) { return has(key) ? number(key) : mark(key, fallback); }

    int integer(const std::string& key) {
        const auto& v = raw(key);
        if (!v.is_number_integer()) throw ValidationError(where(key), "expected an integer");
        return v.get<int>();
    }
    int integer(const std::string& key, int fallback) { return has(key) ? integer(key) : mark(key, fallback); }

    std::string string(const std::string& key) {
        const auto& v = raw(key);
        if (!v.is_string()) throw ValidationError(where(key), "expected a string");
        return v.get<std::string>();
    }

    Reader child(const std::string& key) { return Reader(raw(key), where(key)); }

    std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void finish() const {
        for (const auto& [key, value] : j_.items())
            if (!seen_.count(key)) throw ValidationError(where(key), "unknown key");
    }

  private:
    template <class T>
    T mark(const std::string& key, T fallback) {
        seen_.insert(key);
        return fallback;
    }

    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

template <class F>
auto with_path(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const ValidationError& e) {
        if (e.field().find('.') != std::string::npos) throw;
        throw ValidationError(path + "." + e.field(), std::string(e.what()).substr(e.field().size() + 2));
    }
}

BeamSpec parse_beam(Reader r) {
    BeamSpec b;
    b.family = with_path("beam", [&] { return family_from_string(r.string("family")); });
    b.gamma = r.number("gamma", 0.0);
    b.sigma0 = r.number("sigma0", 0.0);
    b.z_focus = r.number("z_focus", b.family == BeamFamily::Peres ? 1.0 : 0.0);
    r.finish();
    with_path("beam", [&] {
        validate(b);
        return 0;
    });
    return b;
}

UnitsMap parse_units(Reader r) {
    const std::string regime = r.string("regime");
    UnitsMap u;
    if (regime == "optical") {
        const double lambda0 = r.number("lambda0");
        const double n = r.number("refractive_index", 1.0);
        const double x0 = r.number("length_scale", 1.0);
        u = with_path("units", [&] { return UnitsMap::optical(lambda0, n, x0); });
    } else if (regime == "quantum") {
        const double hbar = r.number("hbar", 1.0);
        const double mass = r.number("mass", 1.0);
        const double k = r.number("k", 1.0);
        u = with_path("units", [&] { return UnitsMap::quantum(hbar, mass, k); });
    } else {
        throw ValidationError(r.where("regime"), "expected 'optical' or 'quantum'");
    }
    r.finish();
    return u;
}

Placement placement_from_string(const std::string& s, const std::string& where) {
    if (s == "even_range") return Placement::even_range;
    if (s == "even_maxima") return Placement::even_maxima;
    if (s == "density_quantiles") return Placement::density_quantiles;
    throw ValidationError(where, "unknown placement '" + s + "'");
}

} // namespace

std::string_view to_string(Placement p) {
    switch (p) {
        case Placement::even_range: return "even_range";
        case Placement::even_maxima: return "even_maxima";
        case Placement::density_quantiles: return "density_quantiles";
    }
    return "?";
}

std::string_view to_string(Method m) { return m == Method::spectral ? "spectral" : "analytic"; }

RunConfig parse_config(const json& doc) {
    Reader root(doc, "");
    RunConfig cfg;
    cfg.beam = parse_beam(root.child("beam"));

    {
        Reader g = root.child("grid");
        cfg.grid = {g.number("x_min"), g.number("x_max"), g.integer("n")};
        g.finish();
        with_path("grid", [&] { return make_grid(cfg.grid.x_min, cfg.grid.x_max, cfg.grid.n); });
    }
    {
        Reader z = root.child("z_range");
        cfg.z_range = {z.number("z0"), z.number("z1"), z.integer("snapshots", 1)};
        z.finish();
        if (cfg.z_range.z1 < cfg.z_range.z0) throw ValidationError("z_range.z1", "must be >= z0");
        if (cfg.z_range.snapshots < 1) throw ValidationError("z_range.snapshots", "must be >= 1");
        if (cfg.z_range.z0 < 0.0 && cfg.beam.family == BeamFamily::Peres)
            throw ValidationError("z_range.z0", "Peres field is defined for z >= 0");
    }
    {
        Reader t = root.child("trajectories");
        auto& tc = cfg.trajectories;
        tc.count = t.integer("count");
        tc.placement = placement_from_string(t.string("placement"), t.where("placement"));
        if (t.has("range")) {
            const auto& r = t.raw("range");
            if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
                throw ValidationError(t.where("range"), "expected [low, high]");
            tc.range = std::make_pair(r[0].get<double>(), r[1].get<double>());
            if (!(tc.range->second >= tc.range->first)) throw ValidationError(t.where("range"), "low must not exceed high");
        }
        tc.step = t.number("step", 0.0);
        tc.output_every = t.integer("output_every", 1);
        t.finish();
        if (tc.count < 1) throw ValidationError("trajectories.count", "must be >= 1");
        if (tc.step < 0.0) throw ValidationError("trajectories.step", "must be >= 0");
        if (tc.output_every < 1) throw ValidationError("trajectories.output_every", "must be >= 1");
        if (tc.placement == Placement::even_maxima) {
            if (!is_airy(cfg.beam.family))
                throw ValidationError("trajectories.placement", "even_maxima only applies to Airy beams");
            if (tc.range && (tc.range->first < 1 || tc.range->first != std::floor(tc.range->first) ||
                             tc.range->second != std::floor(tc.range->second)))
                throw ValidationError("trajectories.range", "maxima indices must be integers >= 1");
        } else if (tc.placement == Placement::even_range && !tc.range) {
            throw ValidationError("trajectories.range", "even_range needs a range");
        }
    }
    if (root.has("window")) {
        Reader w = root.child("window");
        WindowSpec ws;
        ws.fraction = w.number("fraction");
        if (w.has("profile"))
            ws.profile = with_path("window", [&] { return window_profile_from_string(w.string("profile")); });
        w.finish();
        if (!(ws.fraction > 0.0 && ws.fraction < 1.0)) throw ValidationError("window.fraction", "must lie in (0, 1)");
        cfg.window = ws;
    }
    if (root.has("method")) {
        const std::string m = root.string("method");
        if (m == "analytic") cfg.method = Method::analytic;
        else if (m == "spectral") cfg.method = Method::spectral;
        else throw ValidationError("method", "expected 'analytic' or 'spectral'");
    }
    if (root.has("units")) cfg.units = parse_units(root.child("units"));
    {
        Reader o = root.child("outputs");
        cfg.outputs.csv = o.string("csv");
        if (o.has("svg")) cfg.outputs.svg = o.string("svg");
        cfg.outputs.manifest = o.string("manifest");
        o.finish();
        if (cfg.outputs.csv.empty()) throw ValidationError("outputs.csv", "empty path");
        if (cfg.outputs.manifest.empty()) throw ValidationError("outputs.manifest", "empty path");
    }
    if (cfg.method == Method::spectral && cfg.beam.family == BeamFamily::Peres && cfg.z_range.z0 != 0.0)
        throw ValidationError("z_range.z0", "spectral Peres runs start from the initial field at z = 0");
    root.finish();
    return cfg;
}

json to_json(const RunConfig& cfg) {
    json j;
    j["beam"] = {{"family", std::string(to_string(cfg.beam.family))},
                 {"gamma", cfg.beam.gamma},
                 {"sigma0", cfg.beam.sigma0},
                 {"z_focus", cfg.beam.z_focus}};
    j["grid"] = {{"x_min", cfg.grid.x_min}, {"x_max", cfg.grid.x_max}, {"n", cfg.grid.n}};
    j["z_range"] = {{"z0", cfg.z_range.z0}, {"z1", cfg.z_range.z1}, {"snapshots", cfg.z_range.snapshots}};
    json t = {{"count", cfg.trajectories.count},
              {"placement", std::string(to_string(cfg.trajectories.placement))},
              {"step", cfg.trajectories.step},
              {"output_every", cfg.trajectories.output_every}};
    if (cfg.trajectories.range) t["range"] = {cfg.trajectories.range->first, cfg.trajectories.range->second};
    j["trajectories"] = t;
    if (cfg.window)
        j["window"] = {{"fraction", cfg.window->fraction}, {"profile", std::string(to_string(cfg.window->profile))}};
    j["method"] = std::string(to_string(cfg.method));
    if (cfg.units) {
        const auto& u = *cfg.units;
        if (u.regime == UnitsMap::Regime::optical)
            j["units"] = {{"regime", "optical"},
                          {"lambda0", u.lambda0},
                          {"refractive_index", u.refractive_index},
                          {"length_scale", u.length_scale}};
        else
            j["units"] = {{"regime", "quantum"}, {"hbar", u.hbar}, {"mass", u.mass}, {"k", u.k_carrier}};
    }
    json o = {{"csv", cfg.outputs.csv}, {"manifest", cfg.outputs.manifest}};
    if (cfg.outputs.svg) o["svg"] = *cfg.outputs.svg;
    j["outputs"] = o;
    return j;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path.string(), "cannot read config file");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("config", std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

std::vector<double> snapshot_ladder(const ZRange& range) {
    if (range.snapshots <= 1 || range.z1 == range.z0) return {range.z0};
    std::vector<double> z(static_cast<size_t>(range.snapshots));
    const int last = range.snapshots - 1;
    for (int i = 0; i <= last; ++i)
        z[static_cast<size_t>(i)] = i == last ? range.z1 : range.z0 + (range.z1 - range.z0) * i / last;
    return z;
}

std::vector<double> initial_positions(const RunConfig& cfg) {
    const auto& tc = cfg.trajectories;
    const int count = tc.count;
    auto spread = [count](double lo, double hi) {
        std::vector<double> x(static_cast<size_t>(count));
        if (count == 1) {
            x[0] = 0.5 * (lo + hi);
            return x;
        }
        for (int i = 0; i < count; ++i) x[static_cast<size_t>(i)] = i == count - 1 ? hi : lo + (hi - lo) * i / (count - 1);
        return x;
    };
    switch (tc.placement) {
        case Placement::even_range: return spread(tc.range->first, tc.range->second);
        case Placement::even_maxima: {
            const int first = tc.range ? static_cast<int>(tc.range->first) : 1;
            const int last = tc.range ? static_cast<int>(tc.range->second) : 10;
            // Maxima lie at decreasing x; span from the deepest to the leading one.
            return spread(airy_prime_zero(last), airy_prime_zero(first));
        }
        case Placement::density_quantiles: {
            const Grid1D grid = make_grid(cfg.grid.x_min, cfg.grid.x_max, cfg.grid.n);
            const double lo = tc.range ? tc.range->first : grid.x_min();
            const double hi = tc.range ? tc.range->second : grid.x(grid.n() - 1);
            // Cumulative density by the trapezoid rule on the grid restricted to [lo, hi].
            std::vector<double> xs, cdf;
            double acc = 0.0, prev = 0.0;
            for (int m = 0; m < grid.n(); ++m) {
                const double x = grid.x(m);
                if (x < lo || x > hi) continue;
                const double rho = std::norm(field_at(cfg.beam, x, cfg.z_range.z0));
                if (!xs.empty()) acc += 0.5 * (rho + prev) * grid.dx();
                xs.push_back(x);
                cdf.push_back(acc);
                prev = rho;
            }
            if (xs.size() < 2 || !(acc > 0.0)) throw ValidationError("trajectories.range", "no density in range");
            std::vector<double> out;
            for (int i = 0; i < count; ++i) {
                const double target = acc * (i + 0.5) / count;
                const auto it = std::lower_bound(cdf.begin(), cdf.end(), target);
                const size_t k = static_cast<size_t>(std::max<std::ptrdiff_t>(1, it - cdf.begin()));
                const double t = (target - cdf[k - 1]) / (cdf[k] - cdf[k - 1]);
                out.push_back(xs[k - 1] + t * (xs[k] - xs[k - 1]));
            }
            return out;
        }
    }
    return {};
}

} // namespace bohmflow
