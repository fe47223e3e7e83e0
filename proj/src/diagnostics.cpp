#include "bohmflow/diagnostics.hpp"

#include "bohmflow/errors.hpp"
#include "bohmflow/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bohmflow {

BeamReport beam_report(const ComplexField1D& field) {
    BeamReport r;
    r.z = field.z();
    r.norm = norm(field);
    r.rms_width = r.norm > 0.0 ? rms_width(field) : 0.0;
    const auto rho = density(field);
    const auto peak = std::max_element(rho.begin(), rho.end());
    r.peak_value = *peak;
    r.peak_position = field.grid().x(static_cast<int>(peak - rho.begin()));
    r.edge_leakage = edge_density_ratio(field);
    return r;
}

double rms_width(const ComplexField1D& field) {
    const auto rho = density(field);
    const auto& g = field.grid();
    double m0 = 0.0, m1 = 0.0;
    for (int m = 0; m < g.n(); ++m) {
        m0 += rho[static_cast<size_t>(m)];
        m1 += rho[static_cast<size_t>(m)] * g.x(m);
    }
    if (!(m0 > 0.0)) throw ValidationError("field", "zero norm");
    const double mean = m1 / m0;
    double m2 = 0.0;
    for (int m = 0; m < g.n(); ++m) {
        const double d = g.x(m) - mean;
        m2 += rho[static_cast<size_t>(m)] * d * d;
    }
    return std::sqrt(m2 / m0);
}

double on_axis_density(const ComplexField1D& field) {
    const auto& g = field.grid();
    const double u = -g.x_min() / g.dx();
    const int m = static_cast<int>(std::floor(u));
    if (m < 1 || m + 2 >= g.n()) throw ValidationError("grid", "x = 0 is not inside the grid interior");
    const double t = u - m;
    double v[4];
    for (int i = 0; i < 4; ++i) v[i] = std::norm(field[m - 1 + i]);
    const double a = t + 1.0, b = t, c = t - 1.0, d = t - 2.0;
    return -v[0] * b * c * d / 6.0 + v[1] * a * c * d / 2.0 - v[2] * a * b * d / 2.0 + v[3] * a * b * c / 6.0;
}

FocusEstimate focus_locate(std::span<const double> z, std::span<const double> values, bool maximize) {
    if (z.size() < 3 || z.size() != values.size()) throw ValidationError("snapshots", "need at least 3 samples");
    size_t best = 0;
    for (size_t i = 1; i < values.size(); ++i)
        if (maximize ? values[i] > values[best] : values[i] < values[best]) best = i;
    // A waist at the first or last snapshot is reported as sampled.
    if (best == 0 || best + 1 == values.size()) return {z[best], values[best]};
    if (!std::isfinite(values[best])) return {z[best], values[best]};  // sampled the singular point itself
    // Vertex of the parabola through the three points around the discrete extremum.
    const double x0 = z[best - 1], x1 = z[best], x2 = z[best + 1];
    const double y0 = values[best - 1], y1 = values[best], y2 = values[best + 1];
    const double d01 = (y1 - y0) / (x1 - x0), d12 = (y2 - y1) / (x2 - x1);
    const double curv = (d12 - d01) / (x2 - x0);
    if (curv == 0.0) return {x1, y1};
    const double zs = 0.5 * (x0 + x1) - d01 / (2.0 * curv);
    const double vs = y1 + (zs - x1) * (d01 + curv * (zs - x0));
    return {zs, vs};
}

FocusEstimate focus_locate(std::span<const ComplexField1D> snapshots, FocusCriterion criterion) {
    std::vector<double> z, v;
    for (const auto& s : snapshots) {
        z.push_back(s.z());
        v.push_back(criterion == FocusCriterion::min_width ? rms_width(s) : on_axis_density(s));
    }
    for (size_t i = 1; i < z.size(); ++i)
        if (!(z[i] > z[i - 1])) throw ValidationError("snapshots", "z must increase");
    return focus_locate(z, v, criterion == FocusCriterion::max_on_axis);
}

std::vector<double> continuity_residual(const ComplexField1D& prev, const ComplexField1D& cur,
                                        const ComplexField1D& next, DerivativeMethod method) {
    if (!(prev.grid() == cur.grid()) || !(next.grid() == cur.grid()))
        throw ValidationError("grid", "snapshots must share a grid");
    const double h1 = cur.z() - prev.z(), h2 = next.z() - cur.z();
    if (!(h1 > 0.0) || std::abs(h1 - h2) > 1e-9 * std::max(1.0, std::abs(cur.z())))
        throw ValidationError("z", "snapshots must form an arithmetic triple");
    const auto dpsi = differentiate(cur, 1, method);
    std::vector<double> flux(dpsi.size());
    for (size_t m = 0; m < flux.size(); ++m) flux[m] = (std::conj(cur[static_cast<int>(m)]) * dpsi[m]).imag();
    const auto dflux = differentiate_real(cur.grid(), flux, 1, method);
    std::vector<double> res(flux.size());
    for (size_t m = 0; m < res.size(); ++m) {
        const int i = static_cast<int>(m);
        const double drho = (std::norm(next[i]) - std::norm(prev[i])) / (2.0 * h1);
        res[m] = drho + dflux[m];
    }
    return res;
}

double trajectory_error(const TrajectorySet& numeric, const BeamSpec& spec) {
    if (!has_closed_form_trajectory(spec.family))
        throw ValidationError("family", "no closed-form trajectory to compare against");
    double err = 0.0;
    for (size_t t = 0; t < numeric.positions.size(); ++t)
        for (size_t k = 0; k < numeric.z_ladder.size(); ++k) {
            const double x = numeric.positions[t][k];
            if (!std::isfinite(x)) continue;
            err = std::max(err, std::abs(x - trajectory_exact(spec, numeric.initial[t], numeric.z_ladder[k])));
        }
    return err;
}

} // namespace bohmflow
