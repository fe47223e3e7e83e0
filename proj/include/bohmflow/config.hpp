#pragma once

#include "bohmflow/beams.hpp"
#include "bohmflow/grid.hpp"
#include "bohmflow/propagator.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <utility>

namespace bohmflow {

enum class Placement { even_range, even_maxima, density_quantiles };
enum class Method { analytic, spectral };

std::string_view to_string(Placement p);
std::string_view to_string(Method m);

struct GridConfig {
    double x_min = 0.0;
    double x_max = 0.0;
    int n = 0;
};

struct ZRange {
    double z0 = 0.0;
    double z1 = 0.0;
    int snapshots = 1;
};

struct TrajectoryConfig {
    int count = 1;
    Placement placement = Placement::even_range;
    /// even_range / density_quantiles: x interval. even_maxima: first and last maximum index.
    std::optional<std::pair<double, double>> range;
    double step = 0.0;  ///< 0 selects the default RK4 step
    int output_every = 1;
};

struct OutputConfig {
    std::string csv;
    std::optional<std::string> svg;
    std::string manifest;
};

/// One run. JSON keys mirror the field names; unknown keys are rejected.
struct RunConfig {
    BeamSpec beam;
    GridConfig grid;
    ZRange z_range;
    TrajectoryConfig trajectories;
    std::optional<WindowSpec> window;
    Method method = Method::analytic;
    std::optional<UnitsMap> units;
    OutputConfig outputs;
};

/// Throws ValidationError whose field() is the JSON path of the offending key.
RunConfig parse_config(const nlohmann::json& doc);
nlohmann::json to_json(const RunConfig& cfg);
/// Reads and parses a config file; IoError when unreadable, ValidationError on bad content.
RunConfig load_config(const std::filesystem::path& path);

/// Snapshot z values: z0 alone when z1 == z0 or snapshots == 1, else evenly spaced.
std::vector<double> snapshot_ladder(const ZRange& range);

/// Initial trajectory positions for the configured placement.
std::vector<double> initial_positions(const RunConfig& cfg);

} // namespace bohmflow
