#include "bohmflow/bohm.hpp"

#include "bohmflow/errors.hpp"
#include "bohmflow/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bohmflow {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Escaped {};

double lagrange4(const double* v, double t) {
    // Nodes at -1, 0, 1, 2; t in [0, 1).
    const double a = t + 1.0, b = t, c = t - 1.0, d = t - 2.0;
    return -v[0] * b * c * d / 6.0 + v[1] * a * c * d / 2.0 - v[2] * a * b * d / 2.0 + v[3] * a * b * c / 6.0;
}

double checked_velocity(const VelocityProvider& p, double x, double z) {
    if (!std::isfinite(x) || !p.inside(x)) throw Escaped{};
    const double v = p.velocity(x, z);
    if (!std::isfinite(v)) throw NodeError("non-finite velocity");
    return v;
}

double rk4_step(const VelocityProvider& p, double x, double z, double h) {
    const double k1 = checked_velocity(p, x, z);
    const double k2 = checked_velocity(p, x + 0.5 * h * k1, z + 0.5 * h);
    const double k3 = checked_velocity(p, x + 0.5 * h * k2, z + 0.5 * h);
    const double k4 = checked_velocity(p, x + h * k3, z + h);
    return x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double substeps(const VelocityProvider& p, double x, double z, double h, int count) {
    const double sub = h / count;
    for (int i = 0; i < count; ++i) x = rk4_step(p, x, z + i * sub, sub);
    return x;
}

} // namespace

VelocityField velocity_numeric(const ComplexField1D& field, DerivativeMethod method) {
    if (field.singular()) throw ValidationError("field", "velocity of a singular field");
    const auto dpsi = differentiate(field, 1, method);
    const auto mask = node_mask(field.values());
    const size_t n = mask.size();
    VelocityField out{field.grid(), field.z(), std::vector<double>(n, kNaN), std::vector<bool>(n, false)};
    bool any = false;
    for (size_t m = 0; m < n; ++m) {
        if (!mask[m]) continue;
        const double v = (dpsi[m] / field[static_cast<int>(m)]).imag();
        if (!std::isfinite(v)) continue;
        out.values[m] = v;
        out.defined_mask[m] = true;
        any = true;
    }
    if (!any) throw NodeError("field has no samples above the node threshold");
    return out;
}

double velocity_spectral(const SpectralField& spec, double x, double z) {
    cplx psi = 0.0, flux = 0.0;
    double scale = 0.0;
    const double dz = z - spec.z0;
    for (size_t j = 0; j < spec.coeffs.size(); ++j) {
        if (spec.coeffs[j] == 0.0) continue;
        const double k = spec.wavenumbers[j];
        const cplx term = spec.coeffs[j] * std::polar(1.0, k * x - 0.5 * k * k * dz);
        psi += term;
        flux += k * term;
        scale += std::abs(spec.coeffs[j]);
    }
    const double rho = std::norm(psi);
    if (!(std::sqrt(rho) > kNodeEpsilon * scale))
        throw NodeError("plane-wave sum vanishes at x = " + std::to_string(x) + ", z = " + std::to_string(z));
    return (flux * std::conj(psi)).real() / rho;
}

std::vector<double> quantum_potential(const ComplexField1D& field, DerivativeMethod method) {
    if (field.singular()) throw ValidationError("field", "quantum potential of a singular field");
    const auto d1 = differentiate(field, 1, method);
    const auto d2 = differentiate(field, 2, method);
    const auto mask = node_mask(field.values());
    std::vector<double> q(mask.size(), kNaN);
    for (size_t m = 0; m < q.size(); ++m) {
        if (!mask[m]) continue;
        const cplx psi = field[static_cast<int>(m)];
        const double rho = std::norm(psi);
        const double rho1 = 2.0 * (std::conj(psi) * d1[m]).real();
        const double rho2 = 2.0 * (std::conj(psi) * d2[m]).real() + 2.0 * std::norm(d1[m]);
        q[m] = -0.5 * (rho2 / rho - 0.5 * (rho1 / rho) * (rho1 / rho));
    }
    return q;
}

std::string_view to_string(TrajectoryFlag flag) {
    switch (flag) {
        case TrajectoryFlag::ok: return "ok";
        case TrajectoryFlag::node_truncated: return "node_truncated";
        case TrajectoryFlag::escaped: return "escaped";
    }
    return "?";
}

void VelocityProvider::check_start(double x0, double) const {
    if (!std::isfinite(x0) || !inside(x0)) throw ValidationError("initial", "start position outside the domain");
}

AnalyticProvider::AnalyticProvider(BeamSpec spec, std::optional<std::pair<double, double>> bounds)
    : spec_(spec), bounds_(bounds) {
    validate(spec_);
}

double AnalyticProvider::velocity(double x, double z) const {
    // Even initial data: the on-axis velocity vanishes, including at the Peres focus.
    if (spec_.family == BeamFamily::Peres && x == 0.0) return 0.0;
    return velocity_exact(spec_, x, z);
}

bool AnalyticProvider::inside(double x) const {
    return !bounds_ || (x >= bounds_->first && x <= bounds_->second);
}

std::optional<double> AnalyticProvider::focus() const {
    if (spec_.family == BeamFamily::GeneralizedGaussian || spec_.family == BeamFamily::Peres) return spec_.z_focus;
    return std::nullopt;
}

SpectralProvider::SpectralProvider(SpectralField spec, std::optional<double> focus)
    : spec_(std::move(spec)), focus_(focus) {
    if (spec_.coeffs.empty() || spec_.coeffs.size() != spec_.wavenumbers.size())
        throw ValidationError("spectrum", "empty or inconsistent spectrum");
}

double SpectralProvider::velocity(double x, double z) const {
    if (z < spec_.z0) throw ValidationError("z", "before the spectrum's reference plane");
    return velocity_spectral(spec_, x, z);
}

bool SpectralProvider::inside(double x) const {
    return x >= spec_.grid.x_min() && x <= spec_.grid.x_max();
}

SnapshotProvider::SnapshotProvider(std::vector<ComplexField1D> snapshots, double density_floor)
    : snapshots_(std::move(snapshots)), density_floor_(density_floor) {
    if (snapshots_.empty()) throw ValidationError("snapshots", "need at least one snapshot");
    for (size_t k = 0; k < snapshots_.size(); ++k) {
        const auto& s = snapshots_[k];
        if (!(s.grid() == snapshots_.front().grid())) throw ValidationError("snapshots", "grids differ");
        if (s.singular()) throw ValidationError("snapshots", "singular snapshot");
        if (k > 0 && !(s.z() > snapshots_[k - 1].z())) throw ValidationError("snapshots", "z must increase");
        velocities_.push_back(velocity_numeric(s));
        spectra_.push_back(to_spectral(s));
    }
}

bool SnapshotProvider::inside(double x) const {
    const auto& g = snapshots_.front().grid();
    return x >= g.x(2) && x < g.x(g.n() - 3);
}

void SnapshotProvider::check_start(double x0, double z0) const {
    VelocityProvider::check_start(x0, z0);
    const auto& s = snapshots_.front();
    if (z0 < s.z()) throw ValidationError("z0", "integration starts before the first snapshot");
    const int m = static_cast<int>(std::lround((x0 - s.grid().x_min()) / s.grid().dx()));
    const double peak = s.max_abs() * s.max_abs();
    if (!(std::norm(s[m]) > density_floor_ * peak))
        throw ValidationError("initial", "start position " + std::to_string(x0) + " lies below the density floor");
}

double SnapshotProvider::at_snapshot(size_t k, double x, double z) const {
    const auto& vf = velocities_[k];
    const auto& g = vf.grid;
    const double u = (x - g.x_min()) / g.dx();
    const int m = static_cast<int>(std::floor(u));
    bool clean = true;
    for (int i = std::max(0, m - 2); i <= std::min(g.n() - 1, m + 3); ++i)
        clean = clean && vf.defined_mask[static_cast<size_t>(i)];
    if (!clean) return velocity_spectral(spectra_[k], x, z);
    return lagrange4(&vf.values[static_cast<size_t>(m - 1)], u - m);
}

double SnapshotProvider::velocity(double x, double z) const {
    const double tol = 1e-12 * std::max(1.0, std::abs(z));
    if (z < snapshots_.front().z() - tol || z > snapshots_.back().z() + tol)
        throw ValidationError("z", "outside the snapshot range");
    if (snapshots_.size() == 1) return at_snapshot(0, x, z);
    size_t k = 0;
    while (k + 2 < snapshots_.size() && snapshots_[k + 1].z() <= z) ++k;
    const double za = snapshots_[k].z(), zb = snapshots_[k + 1].z();
    const double w = std::clamp((z - za) / (zb - za), 0.0, 1.0);
    const double va = w < 1.0 ? at_snapshot(k, x, z) : 0.0;
    const double vb = w > 0.0 ? at_snapshot(k + 1, x, z) : 0.0;
    return (1.0 - w) * va + w * vb;
}

TrajectorySet integrate_trajectories(const VelocityProvider& provider, const std::vector<double>& initial,
                                     double z0, double z1, const IntegrationOptions& opts) {
    if (!(z1 > z0)) throw ValidationError("z1", "must exceed z0");
    if (initial.empty()) throw ValidationError("initial", "no initial positions");
    if (opts.output_every < 1) throw ValidationError("output_every", "must be >= 1");
    for (double x : initial) provider.check_start(x, z0);

    const double span = z1 - z0;
    const double requested = opts.step > 0.0 ? opts.step : std::min(0.01, span / 1000.0);
    const long steps = std::max(1L, static_cast<long>(std::ceil(span / requested - 1e-9)));
    const double h = span / static_cast<double>(steps);
    auto z_at = [&](long i) { return i == steps ? z1 : z0 + static_cast<double>(i) * h; };

    std::vector<long> ladder_steps;
    for (long i = 0; i <= steps; ++i)
        if (i % opts.output_every == 0 || i == steps) ladder_steps.push_back(i);

    TrajectorySet out;
    out.initial = initial;
    for (long i : ladder_steps) out.z_ladder.push_back(z_at(i));
    out.positions.assign(initial.size(), std::vector<double>(ladder_steps.size(), kNaN));
    out.flags.assign(initial.size(), TrajectoryFlag::ok);

    const auto focus = provider.focus();
    parallel_for(initial.size(), [&](size_t t) {
        auto& row = out.positions[t];
        double x = initial[t];
        row[0] = x;
        size_t slot = 1;
        try {
            for (long i = 0; i < steps; ++i) {
                const double za = z_at(i), zb = z_at(i + 1);
                const bool refine = focus && zb >= *focus - opts.focus_band && za <= *focus + opts.focus_band;
                double next = substeps(provider, x, za, zb - za, 1);
                if (refine) {
                    for (int level = 1, count = 2; level <= opts.max_halvings; ++level, count *= 2) {
                        const double finer = substeps(provider, x, za, zb - za, count);
                        const bool settled = std::abs(finer - next) < opts.refine_tol;
                        next = finer;
                        if (settled) break;
                    }
                }
                x = next;
                if (slot < ladder_steps.size() && ladder_steps[slot] == i + 1) row[slot++] = x;
            }
        } catch (const Escaped&) {
            out.flags[t] = TrajectoryFlag::escaped;
        } catch (const NodeError&) {
            out.flags[t] = TrajectoryFlag::node_truncated;
        } catch (const SingularError&) {
            out.flags[t] = TrajectoryFlag::node_truncated;
        }
    });
    return out;
}

} // namespace bohmflow
