#pragma once

#include <optional>
#include <string>
#include <vector>

namespace bohmflow::svg {

/// Sampled scalar over a rectangle; values[iy * nx + ix], row 0 at y_min.
struct Heatmap {
    double x_min = 0.0, x_max = 1.0;
    double y_min = 0.0, y_max = 1.0;
    int nx = 0, ny = 0;
    std::vector<double> values;
    bool log_scale = false;
};

struct Curve {
    std::vector<double> x;
    std::vector<double> y;  ///< NaN breaks the line
    std::string color = "#ffffff";
    double width = 1.0;
    bool dashed = false;
    bool markers = false;  ///< open circles at the points instead of a line
};

struct Panel {
    std::string title;
    std::string x_label;
    std::string y_label;
    double x_min = 0.0, x_max = 1.0;
    double y_min = 0.0, y_max = 1.0;
    std::optional<Heatmap> heatmap;
    std::vector<Curve> curves;
};

/// Self-contained SVG with the panels laid out left to right, `columns` per row.
std::string render(const std::string& title, const std::vector<Panel>& panels, int columns = 3);

} // namespace bohmflow::svg
