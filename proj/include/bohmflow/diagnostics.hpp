#pragma once

#include "bohmflow/beams.hpp"
#include "bohmflow/bohm.hpp"
#include "bohmflow/grid.hpp"

#include <span>
#include <vector>

namespace bohmflow {

struct BeamReport {
    double z = 0.0;
    double norm = 0.0;
    double rms_width = 0.0;
    double peak_position = 0.0;
    double peak_value = 0.0;      ///< peak density
    double edge_leakage = 0.0;    ///< edge_density_ratio of the field
};

BeamReport beam_report(const ComplexField1D& field);

/// sqrt(<x^2> - <x>^2) under the normalized density. Throws ValidationError on zero norm.
double rms_width(const ComplexField1D& field);

enum class FocusCriterion {
    min_width,   ///< smallest RMS width
    max_on_axis, ///< largest density at x = 0 (for fields whose width diverges)
};

struct FocusEstimate {
    double z_star;
    double value_star;  ///< interpolated width, or on-axis density for max_on_axis
};

/// Parabolic interpolation of the criterion over z around its discrete extremum.
/// An extremum at either end of the list is returned as sampled, without interpolation.
FocusEstimate focus_locate(std::span<const ComplexField1D> snapshots,
                           FocusCriterion criterion = FocusCriterion::min_width);
/// Same on precomputed samples (z ascending).
FocusEstimate focus_locate(std::span<const double> z, std::span<const double> values, bool maximize);

/// Density at x = 0 by 4-point interpolation.
double on_axis_density(const ComplexField1D& field);

/// Central-difference residual d(rho)/dz + d(rho v)/dx at cur.z(), with rho v = Im(conj(psi) psi').
/// prev/cur/next must share a grid and be equally spaced in z. Entries where the x
/// derivative is undefined (finite-difference edges) are NaN.
std::vector<double> continuity_residual(const ComplexField1D& prev, const ComplexField1D& cur,
                                        const ComplexField1D& next,
                                        DerivativeMethod method = DerivativeMethod::spectral);

/// max |numeric - trajectory_exact| over trajectories and ladder points (finite entries only).
double trajectory_error(const TrajectorySet& numeric, const BeamSpec& spec);

} // namespace bohmflow
