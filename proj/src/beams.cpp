#include "bohmflow/beams.hpp"

#include "bohmflow/airy.hpp"
#include "bohmflow/errors.hpp"
#include "bohmflow/parallel.hpp"
#include "bohmflow/peres.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bohmflow {
namespace {

using std::numbers::pi;

// Finite-energy Airy beam; gamma = 0 is the ideal beam, evaluated by the same expression.
FieldSample airy_beam(double gamma, double x, double z) {
    const cplx y(x - z * z / 4.0, gamma * z);
    const auto a = airy(y);
    const cplx envelope = std::exp(cplx(gamma * (x - z * z / 2.0), (x - z * z / 6.0) * z / 2.0 + gamma * gamma * z / 2.0));
    const cplx psi = envelope * a.ai;
    return {psi, psi * cplx(gamma, z / 2.0) + envelope * a.ai_prime};
}

// Gaussian with complex width s_z = sigma0 + i (z - z_focus) / (2 sigma0).
FieldSample gaussian_beam(double sigma0, double z_focus, double x, double z) {
    const cplx s0 = width_phase(sigma0, z_focus, 0.0).value;
    const cplx sz = width_phase(sigma0, z_focus, z).value;
    const cplx psi = std::sqrt(s0 / sz) * std::exp(-x * x / (4.0 * sigma0 * sz));
    return {psi, psi * (-x / (2.0 * sigma0 * sz))};
}

double node_guarded_velocity(cplx psi, cplx dpsi, double x, double z) {
    if (!(std::abs(psi) > kNodeEpsilon * std::abs(dpsi)) || std::abs(psi) == 0.0)
        throw NodeError("field vanishes at x = " + std::to_string(x) + ", z = " + std::to_string(z));
    return (dpsi / psi).imag();
}

void require_nonneg(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError(name, "must be finite and >= 0");
}

void require_zero(double v, const char* name, BeamFamily family) {
    if (v != 0.0)
        throw ValidationError(name, std::string("not a parameter of ") + std::string(to_string(family)));
}

} // namespace

std::string_view to_string(BeamFamily family) {
    switch (family) {
        case BeamFamily::IdealAiry: return "IdealAiry";
        case BeamFamily::FiniteAiry: return "FiniteAiry";
        case BeamFamily::Gaussian: return "Gaussian";
        case BeamFamily::GeneralizedGaussian: return "GeneralizedGaussian";
        case BeamFamily::Peres: return "Peres";
    }
    return "?";
}

BeamFamily family_from_string(std::string_view name) {
    for (auto f : {BeamFamily::IdealAiry, BeamFamily::FiniteAiry, BeamFamily::Gaussian,
                   BeamFamily::GeneralizedGaussian, BeamFamily::Peres})
        if (to_string(f) == name) return f;
    throw ValidationError("family", "unknown beam family '" + std::string(name) + "'");
}

void validate(const BeamSpec& spec) {
    switch (spec.family) {
        case BeamFamily::IdealAiry:
            require_zero(spec.gamma, "gamma", spec.family);
            require_zero(spec.sigma0, "sigma0", spec.family);
            require_zero(spec.z_focus, "z_focus", spec.family);
            break;
        case BeamFamily::FiniteAiry:
            require_nonneg(spec.gamma, "gamma");
            require_zero(spec.sigma0, "sigma0", spec.family);
            require_zero(spec.z_focus, "z_focus", spec.family);
            break;
        case BeamFamily::Gaussian:
            if (!(spec.sigma0 > 0.0) || !std::isfinite(spec.sigma0)) throw ValidationError("sigma0", "must be > 0");
            require_zero(spec.gamma, "gamma", spec.family);
            require_zero(spec.z_focus, "z_focus", spec.family);
            break;
        case BeamFamily::GeneralizedGaussian:
            if (!(spec.sigma0 > 0.0) || !std::isfinite(spec.sigma0)) throw ValidationError("sigma0", "must be > 0");
            if (!std::isfinite(spec.z_focus)) throw ValidationError("z_focus", "must be finite");
            require_zero(spec.gamma, "gamma", spec.family);
            break;
        case BeamFamily::Peres:
            if (!(spec.z_focus > 0.0) || !std::isfinite(spec.z_focus))
                throw ValidationError("z_focus", "Peres focal distance must be > 0");
            require_zero(spec.gamma, "gamma", spec.family);
            require_zero(spec.sigma0, "sigma0", spec.family);
            break;
    }
}

bool has_closed_form_trajectory(BeamFamily family) {
    return family == BeamFamily::IdealAiry || family == BeamFamily::Gaussian ||
           family == BeamFamily::GeneralizedGaussian;
}

bool is_airy(BeamFamily family) { return family == BeamFamily::IdealAiry || family == BeamFamily::FiniteAiry; }

ComplexWidth width_phase(double sigma0, double z_focus, double z) {
    if (!(sigma0 > 0.0)) throw ValidationError("sigma0", "must be > 0");
    const double ratio = (z - z_focus) / (2.0 * sigma0 * sigma0);
    const cplx value(sigma0, sigma0 * ratio);
    return {value, sigma0 * std::hypot(1.0, ratio), std::atan(ratio)};
}

std::pair<double, double> sigma_pair(double sigma_g0, double z_focus) {
    if (!(sigma_g0 > 0.0)) throw ValidationError("sigma_g0", "must be > 0");
    const double s2 = sigma_g0 * sigma_g0;
    const double disc = s2 * s2 - z_focus * z_focus;
    if (disc < 0.0) throw ValidationError("sigma_g0", "no waist reproduces this width: sigma_g0^2 < |z_focus|");
    const double root = std::sqrt(disc);
    return {std::sqrt((s2 + root) / 2.0), std::sqrt((s2 - root) / 2.0)};
}

double peres_sigma_g0() { return std::sqrt((10.0 * std::sqrt(10.0) - 1.0) / (2.0 * std::log(10.0))); }

FieldSample field_sample(const BeamSpec& spec, double x, double z) {
    validate(spec);
    if (!std::isfinite(x) || !std::isfinite(z)) throw ValidationError("x", "coordinates must be finite");
    switch (spec.family) {
        case BeamFamily::IdealAiry: return airy_beam(0.0, x, z);
        case BeamFamily::FiniteAiry: return airy_beam(spec.gamma, x, z);
        case BeamFamily::Gaussian: return gaussian_beam(spec.sigma0, 0.0, x, z);
        case BeamFamily::GeneralizedGaussian: return gaussian_beam(spec.sigma0, spec.z_focus, x, z);
        case BeamFamily::Peres: {
            const auto s = peres_sample(x, z, spec.z_focus);
            return {s.psi, s.dpsi};
        }
    }
    throw ValidationError("family", "unhandled family");
}

cplx field_at(const BeamSpec& spec, double x, double z) { return field_sample(spec, x, z).psi; }

cplx spectrum_at(const BeamSpec& spec, double k) {
    validate(spec);
    switch (spec.family) {
        case BeamFamily::IdealAiry:
        case BeamFamily::FiniteAiry: {
            const double g = spec.gamma;
            return std::exp(cplx(-g * k * k + g * g * g / 3.0, (k * k * k - 3.0 * g * g * k) / 3.0));
        }
        case BeamFamily::Gaussian:
        case BeamFamily::GeneralizedGaussian: {
            const double zf = spec.family == BeamFamily::Gaussian ? 0.0 : spec.z_focus;
            const cplx a = spec.sigma0 * width_phase(spec.sigma0, zf, 0.0).value;
            return std::sqrt(4.0 * pi * a) * std::exp(-a * k * k);
        }
        case BeamFamily::Peres: break;
    }
    throw ValidationError("family", "no closed-form spectrum for Peres");
}

double trajectory_exact(const BeamSpec& spec, double x0, double z) {
    validate(spec);
    switch (spec.family) {
        case BeamFamily::IdealAiry: return x0 + z * z / 4.0;
        case BeamFamily::Gaussian:
        case BeamFamily::GeneralizedGaussian: {
            const double zf = spec.family == BeamFamily::Gaussian ? 0.0 : spec.z_focus;
            return x0 * width_phase(spec.sigma0, zf, z).modulus / width_phase(spec.sigma0, zf, 0.0).modulus;
        }
        default:
            throw ValidationError("family", std::string(to_string(spec.family)) +
                                                " has no closed-form trajectory; integrate numerically");
    }
}

double velocity_exact(const BeamSpec& spec, double x, double z) {
    validate(spec);
    switch (spec.family) {
        case BeamFamily::IdealAiry: return z / 2.0;
        case BeamFamily::Gaussian:
        case BeamFamily::GeneralizedGaussian: {
            const double zf = spec.family == BeamFamily::Gaussian ? 0.0 : spec.z_focus;
            const double sz = width_phase(spec.sigma0, zf, z).modulus;
            return x * (z - zf) / (4.0 * spec.sigma0 * spec.sigma0 * sz * sz);
        }
        case BeamFamily::FiniteAiry: {
            const auto a = airy(cplx(x - z * z / 4.0, spec.gamma * z));
            return z / 2.0 + node_guarded_velocity(a.ai, a.ai_prime, x, z);
        }
        case BeamFamily::Peres: {
            const auto s = peres_sample(x, z, spec.z_focus);
            return node_guarded_velocity(s.psi, s.dpsi, x, z);
        }
    }
    throw ValidationError("family", "unhandled family");
}

ComplexField1D sample_field(const BeamSpec& spec, const Grid1D& grid, double z) {
    validate(spec);
    std::vector<cplx> values(static_cast<size_t>(grid.n()));
    std::vector<char> singular(values.size(), 0);
    parallel_for(values.size(), [&](size_t m) {
        try {
            values[m] = field_at(spec, grid.x(static_cast<int>(m)), z);
        } catch (const SingularError&) {
            values[m] = cplx(std::numeric_limits<double>::infinity(), 0.0);
            singular[m] = 1;
        }
    });
    bool any = false;
    for (char s : singular) any = any || s;
    return ComplexField1D(grid, std::move(values), z, any);
}

cplx BandLimitedAiry::spectrum(double k) const {
    const double window = 0.5 * std::erfc((std::abs(k) - k_cut) / edge);
    return window * std::exp(cplx(0.0, k * k * k / 3.0));
}

BandLimitedAiry BandLimitedAiry::for_grid(const Grid1D& grid) {
    const double k_cut = std::min(0.6 * grid.k_max(), 0.6 * std::sqrt(grid.length()));
    return {k_cut, k_cut / 12.0};
}

} // namespace bohmflow
