#include "oracles.hpp"

#include "bohmflow/commands.hpp"
#include "bohmflow/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

using namespace bohmflow;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("bohmflow-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> rows(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::vector<std::vector<std::string>> out;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cells.push_back(c);
        out.push_back(cells);
    }
    return out;
}

json airy_config(const fs::path& dir) {
    return {{"beam", {{"family", "IdealAiry"}}},
            {"grid", {{"x_min", -40}, {"x_max", 20}, {"n", 512}}},
            {"z_range", {{"z0", 0}, {"z1", 10}, {"snapshots", 11}}},
            {"trajectories", {{"count", 10}, {"placement", "even_maxima"}}},
            {"outputs", {{"csv", (dir / "out.csv").string()}, {"manifest", (dir / "manifest.json").string()}}}};
}

std::string field_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ValidationError& e) {
        return e.field();
    }
    return "";
}

} // namespace

TEST_CASE("number format has 17 significant digits") {
    CHECK(format_number(0.0) == "0.0000000000000000e+00");
    CHECK(format_number(-1.5) == "-1.5000000000000000e+00");
    CHECK(format_number(0.1) == "1.0000000000000001e-01");
    CHECK(std::stod(format_number(M_PI)) == M_PI);
    CHECK(format_number(NAN) == "nan");
    CHECK(format_number(-INFINITY) == "-inf");
}

TEST_CASE("sha256 of a known string") {
    TempDir t;
    write_text(t.path / "abc.txt", "abc");
    CHECK(sha256_file(t.path / "abc.txt") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK_THROWS_AS(sha256_file(t.path / "missing"), IoError);
}

TEST_CASE("config parsing: defaults, round trip, unknown keys") {
    TempDir t;
    const auto cfg = parse_config(airy_config(t.path));
    CHECK(cfg.method == Method::analytic);
    CHECK_FALSE(cfg.window.has_value());
    CHECK(parse_config(to_json(cfg)).beam == cfg.beam);
    CHECK(to_json(parse_config(to_json(cfg))) == to_json(cfg));

    auto j = airy_config(t.path);
    j["grid"]["nn"] = 3;
    CHECK(field_of([&] { parse_config(j); }) == "grid.nn");
    j = airy_config(t.path);
    j["extra"] = 1;
    CHECK(field_of([&] { parse_config(j); }) == "extra");
    j = airy_config(t.path);
    j["beam"]["gamma"] = 0.3;
    CHECK(field_of([&] { parse_config(j); }) == "beam.gamma");
    j = airy_config(t.path);
    j["grid"]["n"] = 511;
    CHECK(field_of([&] { parse_config(j); }).rfind("grid", 0) == 0);
    j = airy_config(t.path);
    j["trajectories"]["count"] = 0;
    CHECK(field_of([&] { parse_config(j); }) == "trajectories.count");
    j = airy_config(t.path);
    j["beam"] = {{"family", "Gaussian"}, {"sigma0", 1.0}};
    CHECK(field_of([&] { parse_config(j); }) == "trajectories.placement");
    j = airy_config(t.path);
    j["window"] = {{"fraction", 1.2}};
    CHECK(field_of([&] { parse_config(j); }) == "window.fraction");
    j = airy_config(t.path);
    j["grid"]["x_min"] = "zero";
    CHECK(field_of([&] { parse_config(j); }) == "grid.x_min");
    j = airy_config(t.path);
    j["outputs"].erase("csv");
    CHECK(field_of([&] { parse_config(j); }) == "outputs.csv");
    j = airy_config(t.path);
    j["units"] = {{"regime", "optical"}, {"lambda0", 500e-9}, {"refractive_index", 1.0}, {"length_scale", 53e-6}};
    CHECK(parse_config(j).units->z_from_physical(0.3) == doctest::Approx(8.5).epsilon(0.01));
}

TEST_CASE("snapshot ladder and initial placements") {
    CHECK(snapshot_ladder({2.0, 2.0, 5}) == std::vector<double>{2.0});
    CHECK(snapshot_ladder({0.0, 1.0, 1}) == std::vector<double>{0.0});
    const auto l = snapshot_ladder({0.0, 10.0, 11});
    CHECK(l.size() == 11);
    CHECK(l.back() == 10.0);

    TempDir t;
    auto cfg = parse_config(airy_config(t.path));
    const auto x = initial_positions(cfg);
    CHECK(x.front() == doctest::Approx(oracle::kAiryMaxima[9]));
    CHECK(x.back() == doctest::Approx(oracle::kAiryMaxima[0]));

    cfg.beam = BeamSpec::gaussian(1.0);
    cfg.trajectories.placement = Placement::density_quantiles;
    cfg.trajectories.count = 4;
    cfg.trajectories.range.reset();
    cfg.grid = {-10, 10, 2000};
    const auto q = initial_positions(cfg);
    // quantiles 1/8, 3/8, 5/8, 7/8 of a unit normal
    CHECK(q[0] == doctest::Approx(-1.1503493803760079).epsilon(1e-4));
    CHECK(q[1] == doctest::Approx(-0.31863936396437514).epsilon(1e-4));
    CHECK(q[2] == doctest::Approx(-q[1]).epsilon(1e-6));
    CHECK(q[3] == doctest::Approx(-q[0]).epsilon(1e-6));
}

TEST_CASE("propagate writes snapshots that match the Airy oracle") {
    TempDir t;
    const auto cfg = parse_config(airy_config(t.path));
    const auto r = cmd_propagate(cfg);
    const auto table = rows(t.path / "out.csv");
    REQUIRE(table.size() == 1 + 11 * 512);
    CHECK(table[0] == std::vector<std::string>{"z", "x", "re_psi", "im_psi", "density"});
    std::mt19937 rng(1);
    std::uniform_int_distribution<size_t> pick(1, table.size() - 1);
    for (int i = 0; i < 100; ++i) {
        const auto& row = table[pick(rng)];
        const double z = std::stod(row[0]), x = std::stod(row[1]);
        const double a = oracle::ai(x - z * z / 4);
        CHECK(std::abs(std::stod(row[4]) - a * a) < 1e-10);
    }
    const auto m = json::parse(slurp(r.manifest));
    CHECK(m["engine"] == "bohmflow");
    CHECK(m["command"] == "propagate");
    CHECK(m["files"][0]["sha256"] == sha256_file(t.path / "out.csv"));
    CHECK(m["files"][0]["bytes"] == fs::file_size(t.path / "out.csv"));
}

TEST_CASE("zero-length z range gives the initial snapshot only") {
    TempDir t;
    auto j = airy_config(t.path);
    j["z_range"] = {{"z0", 0}, {"z1", 0}, {"snapshots", 5}};
    cmd_propagate(parse_config(j));
    CHECK(rows(t.path / "out.csv").size() == 1 + 512);
}

TEST_CASE("trace writes parabolic Airy trajectories") {
    TempDir t;
    auto j = airy_config(t.path);
    j["trajectories"]["output_every"] = 100;
    j["grid"]["x_max"] = 40;  // the lead maximum reaches x ~ 24 by z = 10
    cmd_trace(parse_config(j));
    const auto table = rows(t.path / "out.csv");
    CHECK(table[0] == std::vector<std::string>{"traj_id", "z", "x", "flag"});
    std::map<std::string, double> start;
    for (size_t i = 1; i < table.size(); ++i) {
        const auto& row = table[i];
        CHECK(row[3] == "ok");
        const double z = std::stod(row[1]), x = std::stod(row[2]);
        if (z == 0.0) start[row[0]] = x;
        CHECK(std::abs(x - start.at(row[0]) - z * z / 4) < 1e-6);
    }
    CHECK(start.size() == 10);
}

TEST_CASE("spectral trace of a Gaussian and the density floor check") {
    TempDir t;
    json j = {{"beam", {{"family", "Gaussian"}, {"sigma0", 1.0}}},
              {"grid", {{"x_min", -20}, {"x_max", 20}, {"n", 512}}},
              {"z_range", {{"z0", 0}, {"z1", 2}, {"snapshots", 101}}},
              {"trajectories", {{"count", 5}, {"placement", "even_range"}, {"range", {-2, 2}}}},
              {"method", "spectral"},
              {"outputs", {{"csv", (t.path / "tr.csv").string()}, {"svg", (t.path / "tr.svg").string()}, {"manifest", (t.path / "m.json").string()}}}};
    cmd_trace(parse_config(j));
    const auto table = rows(t.path / "tr.csv");
    double worst = 0.0;
    for (size_t i = 1; i < table.size(); ++i) {
        const double z = std::stod(table[i][1]), x = std::stod(table[i][2]);
        const double x0 = -2.0 + std::stoi(table[i][0]);
        worst = std::max(worst, std::abs(x - oracle::gaussian_ray(1.0, x0, z)));
    }
    CHECK(worst < 1e-4);
    CHECK(slurp(t.path / "tr.svg").rfind("<?xml", 0) == 0);

    j["trajectories"]["range"] = {-19, 19};
    CHECK(field_of([&] { cmd_trace(parse_config(j)); }) == "trajectories");
}

TEST_CASE("unwritable outputs fail before any work, naming the path") {
    TempDir t;
    write_text(t.path / "blocker", "x");
    auto j = airy_config(t.path);
    j["outputs"]["csv"] = (t.path / "blocker" / "out.csv").string();
    try {
        cmd_propagate(parse_config(j));
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(e.path().find("blocker") != std::string::npos);
    }
    CHECK_FALSE(fs::exists(t.path / "manifest.json"));
}

TEST_CASE("verify accepts untouched outputs and catches edits") {
    TempDir t;
    const auto r = cmd_propagate(parse_config(airy_config(t.path)));
    const auto ok = cmd_verify(r.manifest);
    CHECK(ok.ok);
    CHECK(ok.detail["status"] == "ok");
    {
        std::ofstream out(t.path / "out.csv", std::ios::app);
        out << "tampered\n";
    }
    const auto bad = cmd_verify(r.manifest);
    CHECK_FALSE(bad.ok);
    CHECK(bad.detail["files"][0]["match"] == false);
    CHECK_THROWS_AS(cmd_verify(t.path / "nope.json"), IoError);
}

TEST_CASE("outputs do not depend on the worker count") {
    TempDir t;
    auto j = airy_config(t.path);
    j["beam"] = {{"family", "FiniteAiry"}, {"gamma", 0.11}};
    std::vector<std::string> hashes;
    for (const char* threads : {"1", "3"}) {
        ::setenv("BOHMFLOW_THREADS", threads, 1);
        cmd_trace(parse_config(j));
        hashes.push_back(sha256_file(t.path / "out.csv"));
    }
    ::unsetenv("BOHMFLOW_THREADS");
    CHECK(hashes[0] == hashes[1]);
}

TEST_CASE("figure presets and overrides") {
    const auto p = figure_parameters("fig2");
    CHECK(p.at("gamma") == 0.11);
    CHECK(figure_parameters("fig3").at("count") == 51);
    CHECK(field_of([] { figure_parameters("fig7"); }) == "figure");
    TempDir t;
    CHECK(field_of([&] { cmd_figure("fig4", {{"bogus", "1"}}, t.path); }) == "bogus");
    CHECK(field_of([&] { cmd_figure("fig4", {{"samples", "many"}}, t.path); }) == "samples");

    const auto r = cmd_figure("fig4", {{"samples", "50"}}, t.path);
    CHECK(r.files.size() == 3);
    const auto table = rows(t.path / "fig4_width_phase.csv");
    CHECK(table.size() == 51);
    const auto m = json::parse(slurp(r.manifest));
    CHECK(m["run"]["overrides"]["samples"] == "50");
    CHECK(cmd_verify(r.manifest).ok);
}

TEST_CASE("fig5 uses the same launch points for both waists") {
    TempDir t;
    cmd_figure("fig5", {{"nx", "21"}, {"nz", "11"}, {"zoom_nx", "5"}, {"zoom_nz", "5"}}, t.path);
    const auto plus = rows(t.path / "fig5_plus_trajectories.csv");
    const auto minus = rows(t.path / "fig5_minus_trajectories.csv");
    std::map<std::string, std::string> a, b;
    for (size_t i = 1; i < plus.size(); ++i)
        if (std::stod(plus[i][1]) == 0.0) a[plus[i][0]] = plus[i][2];
    for (size_t i = 1; i < minus.size(); ++i)
        if (std::stod(minus[i][1]) == 0.0) b[minus[i][0]] = minus[i][2];
    CHECK(a.size() == 51);
    CHECK(a == b);
}

TEST_CASE("fig1 nodal lines are shifted Airy zeros and the scatter overlay is drawn") {
    TempDir t;
    write_text(t.path / "pts.csv", "x,y\n1.0,2.0\n-3.5,4.0\n");
    cmd_figure("fig1", {{"nx", "41"}, {"nz", "11"}, {"count", "4"}, {"scatter", (t.path / "pts.csv").string()}}, t.path);
    const auto lines = rows(t.path / "fig1_nodal_lines.csv");
    CHECK(lines[0] == std::vector<std::string>{"line_id", "z", "x"});
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i][0].rfind("zero_", 0) != 0) continue;
        const int k = std::stoi(lines[i][0].substr(5));
        const double z = std::stod(lines[i][1]);
        CHECK(std::stod(lines[i][2]) == doctest::Approx(oracle::kAiryZeros[k - 1] + z * z / 4));
    }
    const auto svg = slurp(t.path / "fig1_figure.svg");
    CHECK(svg.find("<circle") != std::string::npos);
    CHECK(rows(t.path / "fig1_profiles.csv")[0] == std::vector<std::string>{"profile_id", "z", "x", "density"});
}

TEST_CASE("analytic Peres tracing stops short of the focus") {
    TempDir t;
    json j = {{"beam", {{"family", "Peres"}, {"z_focus", 1.0}}},
              {"grid", {{"x_min", -20}, {"x_max", 20}, {"n", 256}}},
              {"z_range", {{"z0", 0}, {"z1", 1.5}}},
              {"trajectories", {{"count", 4}, {"placement", "even_range"}, {"range", {-3, 3}}}},
              {"outputs", {{"csv", (t.path / "p.csv").string()}, {"manifest", (t.path / "m.json").string()}}}};
    CHECK(field_of([&] { cmd_trace(parse_config(j)); }) == "method");
    j["z_range"]["z1"] = 0.5;
    j["trajectories"]["step"] = 0.05;
    cmd_trace(parse_config(j));
    CHECK(rows(t.path / "p.csv").size() == 1 + 4 * 11);
}
