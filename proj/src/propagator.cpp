#include "bohmflow/propagator.hpp"

#include "bohmflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace bohmflow {

std::string_view to_string(WindowProfile profile) {
    return profile == WindowProfile::hard ? "hard" : "cosine_taper";
}

WindowProfile window_profile_from_string(std::string_view name) {
    if (name == "cosine_taper") return WindowProfile::cosine_taper;
    if (name == "hard") return WindowProfile::hard;
    throw ValidationError("profile", "unknown window profile '" + std::string(name) + "'");
}

ComplexField1D free_propagate(const ComplexField1D& field, double dz) {
    if (!(dz >= 0.0) || !std::isfinite(dz)) throw ValidationError("dz", "must be finite and >= 0");
    if (field.singular()) throw ValidationError("field", "cannot propagate a singular field");
    if (dz == 0.0) return field;
    SpectralField spec = to_spectral(field);
    for (size_t j = 0; j < spec.coeffs.size(); ++j) {
        const double k = spec.wavenumbers[j];
        spec.coeffs[j] *= std::polar(1.0, -0.5 * k * k * dz);
    }
    spec.z0 = field.z() + dz;
    return from_spectral(spec);
}

ComplexField1D truncate_window(const ComplexField1D& field, double fraction, WindowProfile profile) {
    if (!(fraction > 0.0 && fraction < 1.0)) throw ValidationError("fraction", "must lie in (0, 1)");
    const int n = field.grid().n();
    const int band = static_cast<int>(std::lround(fraction * n / 2.0));
    std::vector<cplx> out(field.values().begin(), field.values().end());
    for (int e = 0; e < band; ++e) {
        const double w = profile == WindowProfile::hard
                             ? 0.0
                             : 0.5 * (1.0 - std::cos(std::numbers::pi * (e + 0.5) / band));
        // x_min has no partner; sample e mirrors n - e, so even data stay even
        out[static_cast<size_t>(e)] *= w;
        if (e > 0) out[static_cast<size_t>(n - e)] *= w;
    }
    return ComplexField1D(field.grid(), std::move(out), field.z(), field.singular());
}

double edge_density_ratio(const ComplexField1D& field) {
    const int n = field.grid().n();
    const int band = std::max(1, n / 20);
    double peak = 0.0, edge = 0.0;
    for (int m = 0; m < n; ++m) {
        const double d = std::norm(field[m]);
        peak = std::max(peak, d);
        if (m < band || m >= n - band) edge = std::max(edge, d);
    }
    return peak > 0.0 ? edge / peak : 0.0;
}

std::vector<ComplexField1D> propagate_plan(const ComplexField1D& field0, const PropagationPlan& plan) {
    if (plan.keep_every < 1) throw ValidationError("keep_every", "must be >= 1");
    if (plan.window && !(plan.window->fraction > 0.0 && plan.window->fraction < 1.0))
        throw ValidationError("window.fraction", "must lie in (0, 1)");
    for (size_t i = 0; i < plan.z_targets.size(); ++i) {
        const double z = plan.z_targets[i];
        const bool ordered = i == 0 ? z >= field0.z() : z > plan.z_targets[i - 1];
        if (!std::isfinite(z) || !ordered)
            throw ValidationError("z_targets[" + std::to_string(i) + "]",
                                  "targets must be strictly increasing and start at or after the field's z");
    }
    std::vector<ComplexField1D> kept;
    ComplexField1D current = field0;
    const size_t count = plan.z_targets.size();
    for (size_t i = 0; i < count; ++i) {
        const double z = plan.z_targets[i];
        try {
            current = free_propagate(current, z - current.z());
            if (current.z() != z)
                current = ComplexField1D(current.grid(), {current.values().begin(), current.values().end()}, z);
        } catch (const NumericalError& e) {
            throw NumericalError("propagation to z = " + std::to_string(z) + " failed: " + e.what());
        }
        if (plan.window) {
            current = truncate_window(current, plan.window->fraction, plan.window->profile);
        } else if (plan.auto_window && edge_density_ratio(current) > kEdgeTrigger) {
            const WindowSpec def;
            current = truncate_window(current, def.fraction, def.profile);
        }
        if (i % static_cast<size_t>(plan.keep_every) == 0 || i + 1 == count) kept.push_back(current);
    }
    return kept;
}

} // namespace bohmflow
