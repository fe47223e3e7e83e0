#pragma once

#include "bohmflow/bohm.hpp"
#include "bohmflow/grid.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace bohmflow {

inline constexpr const char* kEngineName = "bohmflow";
inline constexpr const char* kEngineVersion = "1.0.0";

/// Scientific notation with 17 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

/// Creates the parent directory and checks the file can be opened for writing.
/// Throws IoError(path) otherwise.
void ensure_writable(const std::filesystem::path& path);

/// Writes text in one go; IoError(path) on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

/// Lowercase hex SHA-256 of a file's bytes; IoError(path) when unreadable.
std::string sha256_file(const std::filesystem::path& path);

/// Columns z, x, re_psi, im_psi, density.
std::string snapshots_csv(const std::vector<ComplexField1D>& snapshots);
/// Columns traj_id, z, x, flag; rows stop at the last finite position.
std::string trajectories_csv(const TrajectorySet& set);

struct ManifestEntry {
    std::string role;
    std::filesystem::path path;
};

/// Manifest document: engine, version, command, the run description and each file with
/// its SHA-256 and size.
nlohmann::json build_manifest(const std::string& command, const nlohmann::json& run,
                              const std::vector<ManifestEntry>& files);

} // namespace bohmflow
