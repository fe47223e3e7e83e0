#pragma once

#include "bohmflow/config.hpp"
#include "bohmflow/output.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace bohmflow {

struct CommandResult {
    std::vector<ManifestEntry> files;
    std::filesystem::path manifest;
};

/// Snapshots over the configured z ladder, from the closed forms or by spectral stepping.
std::vector<ComplexField1D> compute_snapshots(const RunConfig& cfg);

/// Writes the snapshots CSV (and SVG when configured) plus the manifest.
CommandResult cmd_propagate(const RunConfig& cfg);
/// Writes the trajectories CSV (and SVG when configured) plus the manifest.
CommandResult cmd_trace(const RunConfig& cfg);

using Overrides = std::map<std::string, std::string>;

/// Figure presets fig1..fig5. Writes CSV datasets, an SVG and a manifest into out_dir.
CommandResult cmd_figure(const std::string& name, const Overrides& overrides, const std::filesystem::path& out_dir);
/// Names and default values of a preset's parameters.
std::map<std::string, double> figure_parameters(const std::string& name);

struct VerifyReport {
    bool ok = true;
    nlohmann::json detail;
};

/// Checks the stored hashes against the files on disk, then re-runs the recorded command
/// into a scratch directory and compares the regenerated files.
VerifyReport cmd_verify(const std::filesystem::path& manifest_path);

} // namespace bohmflow
