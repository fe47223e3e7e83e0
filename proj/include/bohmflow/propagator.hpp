#pragma once

#include "bohmflow/grid.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace bohmflow {

enum class WindowProfile { cosine_taper, hard };

std::string_view to_string(WindowProfile profile);
WindowProfile window_profile_from_string(std::string_view name);

struct WindowSpec {
    double fraction = 0.1;  ///< share of the grid, split evenly between both edges
    WindowProfile profile = WindowProfile::cosine_taper;
};

/// Density above this fraction of the peak in the outer band triggers the automatic window.
inline constexpr double kEdgeTrigger = 1e-8;

struct PropagationPlan {
    std::vector<double> z_targets;  ///< strictly increasing, first >= field.z()
    int keep_every = 1;             ///< return every keep_every-th snapshot (the last is always kept)
    std::optional<WindowSpec> window;
    /// Without an explicit window, apply the default cosine taper after any step whose edge
    /// density exceeds kEdgeTrigger of the peak.
    bool auto_window = false;
};

/// Exact free propagation by dz >= 0: each plane-wave coefficient gains exp(-i k^2 dz / 2).
ComplexField1D free_propagate(const ComplexField1D& field, double dz);

/// Snapshots at the kept targets, each stepped from the previous one, windowed after each
/// step when configured.
std::vector<ComplexField1D> propagate_plan(const ComplexField1D& field0, const PropagationPlan& plan);

/// Multiplies by a mask that is 1 on the central (1 - fraction) of the samples and either
/// falls to 0 over the outer bands along a raised cosine or is 0 there (hard).
ComplexField1D truncate_window(const ComplexField1D& field, double fraction, WindowProfile profile);

/// Peak density over the outer 5% of samples on each side, relative to the global peak.
double edge_density_ratio(const ComplexField1D& field);

} // namespace bohmflow
