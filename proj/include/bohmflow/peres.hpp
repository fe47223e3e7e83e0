#pragma once

#include "bohmflow/grid.hpp"

#include <complex>

namespace bohmflow {

/// Tolerances of the on-axis singular point: |z - z_focus| and |x| below these are singular.
inline constexpr double kPeresSingularZ = 1e-6;
inline constexpr double kPeresSingularX = 1e-6;

struct PeresOptions {
    /// Half-width of the real-axis core interval; beyond it the integration path leaves the
    /// real axis into the right/left half-planes where the amplitude is analytic.
    double core_half_width = 1.0;
    double rel_tol = 1e-10;
};

struct PeresSample {
    std::complex<double> psi;
    std::complex<double> dpsi;  ///< d psi / dx
};

/// Initial field exp(-i x^2 / (2 z_focus)) / (1 + x^2)^{1/3}.
std::complex<double> peres_initial(double x, double z_focus);

/// Freely propagated Peres field and its x-derivative at (x, z), z >= 0, from the
/// Fresnel-kernel integral over the whole real line. The quadratic-phase tails are
/// evaluated on deformed contours (steepest descent through the stationary point when it
/// lies outside the core), so no truncation of the initial data is involved.
///
/// Throws SingularError at the focal point (|x| < kPeresSingularX, |z - z_focus| <
/// kPeresSingularZ) and NumericalError if the quadrature does not converge.
PeresSample peres_sample(double x, double z, double z_focus, const PeresOptions& opts = {});

/// Initial data cut where the density is ~2% of its peak: flat out to |x| = cut, cosine
/// band to cut / 0.9, zero beyond, as plane waves on the grid (which must extend past the
/// band). Unlike the uncut field this stays bounded and smooth through the focus.
SpectralField truncated_peres(double z_focus, double cut, const Grid1D& grid);

} // namespace bohmflow
