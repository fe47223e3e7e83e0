#pragma once

#include "bohmflow/grid.hpp"

#include <string>
#include <string_view>
#include <utility>

namespace bohmflow {

enum class BeamFamily { IdealAiry, FiniteAiry, Gaussian, GeneralizedGaussian, Peres };

std::string_view to_string(BeamFamily family);
/// Throws ValidationError("family") for unknown names.
BeamFamily family_from_string(std::string_view name);

/// One analytic beam family with its parameters. Parameters that do not apply to the
/// family must be zero; validate() enforces this.
struct BeamSpec {
    BeamFamily family = BeamFamily::IdealAiry;
    double gamma = 0.0;    ///< exponential apodization rate of the finite-energy Airy beam
    double sigma0 = 0.0;   ///< waist of the Gaussian families
    double z_focus = 0.0;  ///< focal distance (GeneralizedGaussian, Peres)

    static BeamSpec ideal_airy() { return {}; }
    static BeamSpec finite_airy(double gamma) { return {BeamFamily::FiniteAiry, gamma, 0.0, 0.0}; }
    static BeamSpec gaussian(double sigma0) { return {BeamFamily::Gaussian, 0.0, sigma0, 0.0}; }
    static BeamSpec generalized_gaussian(double sigma0, double z_focus) {
        return {BeamFamily::GeneralizedGaussian, 0.0, sigma0, z_focus};
    }
    static BeamSpec peres(double z_focus = 1.0) { return {BeamFamily::Peres, 0.0, 0.0, z_focus}; }

    bool operator==(const BeamSpec&) const = default;
};

/// Throws ValidationError naming the offending parameter.
void validate(const BeamSpec& spec);

bool has_closed_form_trajectory(BeamFamily family);
bool is_airy(BeamFamily family);

/// Complex width s = sigma0 + i (z - z_focus) / (2 sigma0) with its modulus and argument.
struct ComplexWidth {
    cplx value;
    double modulus;
    double arg;
};

ComplexWidth width_phase(double sigma0, double z_focus, double z);

/// The two waists sigma0 (larger first) that produce initial width sigma_g0 for focal
/// distance z_focus. Throws ValidationError("sigma_g0") when sigma_g0^2 < |z_focus|.
std::pair<double, double> sigma_pair(double sigma_g0, double z_focus);

/// Initial width of the Gaussian whose density falls to a tenth of its peak at the same
/// points as the Peres initial density: sqrt((10 sqrt(10) - 1) / (2 ln 10)).
double peres_sigma_g0();

struct FieldSample {
    cplx psi;
    cplx dpsi;  ///< d psi / dx
};

/// Exact propagated field of the family at (x, z). Peres is evaluated by quadrature and
/// throws SingularError at its focal point.
cplx field_at(const BeamSpec& spec, double x, double z);
FieldSample field_sample(const BeamSpec& spec, double x, double z);

/// Initial transform psi~(k) = int psi(x, 0) e^{-ikx} dx. Not available for Peres.
cplx spectrum_at(const BeamSpec& spec, double k);

/// Exact trajectory through x0 at z = 0. Only for IdealAiry and the Gaussian families.
double trajectory_exact(const BeamSpec& spec, double x0, double z);

/// Exact velocity Im(psi'/psi). Throws NodeError where the field vanishes (finite Airy at
/// zeros of Ai, Peres), SingularError at the Peres focus.
double velocity_exact(const BeamSpec& spec, double x, double z);

/// Samples field_at on the grid (in parallel). For Peres, a sample on the focal point
/// yields an infinite amplitude and a field flagged singular.
ComplexField1D sample_field(const BeamSpec& spec, const Grid1D& grid, double z);

/// Ideal Airy spectrum e^{ik^3/3} restricted by a smooth flat-top band
/// W(k) = erfc((|k| - k_cut) / edge) / 2, so that the field is representable on a periodic
/// grid. For |x - z^2/4| well below k_cut^2 it reproduces the ideal Airy beam closely; the
/// grid must be long enough (L well above k_cut^2) for the periodic images to be negligible.
struct BandLimitedAiry {
    double k_cut;
    double edge;

    cplx spectrum(double k) const;
    /// Band limits suited to the grid: cut at min(0.6 k_max, 0.6 sqrt(L)), edge k_cut / 12.
    static BandLimitedAiry for_grid(const Grid1D& grid);
};

} // namespace bohmflow
