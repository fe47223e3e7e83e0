#pragma once

#include "bohmflow/beams.hpp"
#include "bohmflow/grid.hpp"

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace bohmflow {

/// v(x_m, z) = Im(psi'/psi) on a grid; entries with defined_mask false are NaN.
struct VelocityField {
    Grid1D grid;
    double z;
    std::vector<double> values;
    std::vector<bool> defined_mask;
};

/// Throws NodeError when every sample is a node.
VelocityField velocity_numeric(const ComplexField1D& field,
                               DerivativeMethod method = DerivativeMethod::spectral);

/// Velocity of the plane-wave superposition at (x, z):
/// Re(sum_j k_j c_j e^{i theta_j} * conj(sum_l c_l e^{i theta_l})) / |sum_l c_l e^{i theta_l}|^2,
/// theta_j = k_j x - k_j^2 (z - z0) / 2. This is the pairwise double sum in factored form.
/// Throws NodeError when |psi| <= kNodeEpsilon * sum_j |c_j|.
double velocity_spectral(const SpectralField& spec, double x, double z);

/// Q = -(1/2) (rho''/rho - (rho'/rho)^2 / 2), derivatives of rho formed from psi, psi', psi''.
/// NaN at nodes.
std::vector<double> quantum_potential(const ComplexField1D& field,
                                      DerivativeMethod method = DerivativeMethod::spectral);

enum class TrajectoryFlag { ok, node_truncated, escaped };
std::string_view to_string(TrajectoryFlag flag);

struct TrajectorySet {
    std::vector<double> z_ladder;
    std::vector<std::vector<double>> positions;  ///< [trajectory][ladder index]; NaN after truncation
    std::vector<double> initial;
    std::vector<TrajectoryFlag> flags;
};

/// Source of the guidance velocity dx/dz = v(x, z).
class VelocityProvider {
  public:
    virtual ~VelocityProvider() = default;
    /// Throws NodeError/SingularError where the velocity is undefined.
    virtual double velocity(double x, double z) const = 0;
    /// False once x has left the region where the velocity is available.
    virtual bool inside(double x) const = 0;
    /// Focal distance around which steps are refined, if any.
    virtual std::optional<double> focus() const { return std::nullopt; }
    /// Throws ValidationError if x0 is not an admissible starting point at z0.
    virtual void check_start(double x0, double z0) const;
};

/// Exact velocities of an analytic family, optionally restricted to [x_min, x_max].
class AnalyticProvider final : public VelocityProvider {
  public:
    explicit AnalyticProvider(BeamSpec spec, std::optional<std::pair<double, double>> bounds = std::nullopt);
    double velocity(double x, double z) const override;
    bool inside(double x) const override;
    std::optional<double> focus() const override;

  private:
    BeamSpec spec_;
    std::optional<std::pair<double, double>> bounds_;
};

/// Velocities from stored snapshots: 4-point Lagrange interpolation in x, linear in z.
/// Within two cells of a node the plane-wave sum of the lower bracketing snapshot is used.
class SnapshotProvider final : public VelocityProvider {
  public:
    /// Snapshots must share a grid, be non-singular and have increasing z.
    explicit SnapshotProvider(std::vector<ComplexField1D> snapshots, double density_floor = 1e-10);
    double velocity(double x, double z) const override;
    bool inside(double x) const override;
    void check_start(double x0, double z0) const override;

  private:
    double at_snapshot(size_t k, double x, double z) const;

    std::vector<ComplexField1D> snapshots_;
    std::vector<VelocityField> velocities_;
    std::vector<SpectralField> spectra_;
    double density_floor_;
};

/// Velocities of a periodic band-limited field by its plane-wave sum (velocity_spectral),
/// exact at every (x, z). Restricted to the field's grid interval.
class SpectralProvider final : public VelocityProvider {
  public:
    explicit SpectralProvider(SpectralField spec, std::optional<double> focus = std::nullopt);
    double velocity(double x, double z) const override;
    bool inside(double x) const override;
    std::optional<double> focus() const override { return focus_; }

  private:
    SpectralField spec_;
    std::optional<double> focus_;
};

struct IntegrationOptions {
    double step = 0.0;         ///< RK4 step; 0 selects min(0.01, (z1 - z0) / 1000)
    int output_every = 1;      ///< ladder keeps every output_every-th step (and the last)
    double refine_tol = 1e-7;  ///< near the focus, steps are halved until successive results agree
    double focus_band = 0.05;  ///< half-width of the refined region around the focus
    int max_halvings = 12;
};

/// Classical RK4 on dx/dz = v(x, z) for each initial position, in parallel with output
/// independent of the thread count. A trajectory that meets a node or singularity is
/// flagged node_truncated, one that leaves the provider's region escaped; both stop there.
TrajectorySet integrate_trajectories(const VelocityProvider& provider, const std::vector<double>& initial,
                                     double z0, double z1, const IntegrationOptions& opts = {});

} // namespace bohmflow
