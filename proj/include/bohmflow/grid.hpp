#pragma once

#include <complex>
#include <span>
#include <vector>

namespace bohmflow {

using cplx = std::complex<double>;

/// Relative amplitude below which a sample counts as a node: |psi| <= kNodeEpsilon * max|psi|.
inline constexpr double kNodeEpsilon = 1e-12;

/// Uniform periodic sampling x_m = x_min + m*dx, m = 0..n-1, dx = (x_max - x_min)/n.
class Grid1D {
  public:
    Grid1D(double x_min, double x_max, int n);

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    int n() const noexcept { return n_; }
    double dx() const noexcept { return dx_; }
    double length() const noexcept { return x_max_ - x_min_; }
    double x(int m) const noexcept { return x_min_ + m * dx_; }
    std::vector<double> points() const;

    /// Wavenumber of centered mode j in [-n/2, n/2): 2*pi*j / (n*dx).
    double wavenumber(int j) const noexcept;
    double dk() const noexcept;
    double k_max() const noexcept;

    bool operator==(const Grid1D& other) const noexcept {
        return x_min_ == other.x_min_ && x_max_ == other.x_max_ && n_ == other.n_;
    }

  private:
    double x_min_;
    double x_max_;
    int n_;
    double dx_;
};

/// Validating factory; throws ValidationError naming "n", "x_max".
Grid1D make_grid(double x_min, double x_max, int n);

/// Immutable wavefield snapshot psi(x_m) at propagation coordinate z.
class ComplexField1D {
  public:
    ComplexField1D(Grid1D grid, std::vector<cplx> values, double z, bool singular = false);

    const Grid1D& grid() const noexcept { return grid_; }
    std::span<const cplx> values() const noexcept { return values_; }
    const cplx& operator[](int m) const noexcept { return values_[static_cast<size_t>(m)]; }
    double z() const noexcept { return z_; }
    /// Set only by the Peres evaluator when a sample sits on the focal singularity.
    bool singular() const noexcept { return singular_; }
    double max_abs() const noexcept;

  private:
    Grid1D grid_;
    std::vector<cplx> values_;
    double z_;
    bool singular_;
};

/// Plane-wave decomposition psi(x) = sum_j c_j exp(i k_j x), modes ordered j = -n/2..n/2-1.
///
/// Coefficients carry the 1/n normalization, so sum |c_j|^2 = sum |psi_m|^2 / n and the
/// coefficients can be fed straight into the plane-wave trajectory sums. Phases are taken
/// relative to x = 0, not to x_min, so the sum may be evaluated at any real x.
struct SpectralField {
    Grid1D grid;
    std::vector<double> wavenumbers;
    std::vector<cplx> coeffs;
    double z0 = 0.0;

    /// Energy E_j = k_j^2 / 2 of mode j in the dimensionless frame.
    double energy(size_t j) const noexcept { return 0.5 * wavenumbers[j] * wavenumbers[j]; }
    /// psi(x, z) evaluated by explicit summation, z measured on the same axis as z0.
    cplx evaluate(double x, double z) const;
};

SpectralField to_spectral(const ComplexField1D& field);
ComplexField1D from_spectral(const SpectralField& spec);

/// Coefficients c_j = F(k_j)/L from a continuous transform F(k) = int psi(x) e^{-ikx} dx.
template <class SpectrumFn>
SpectralField sample_spectrum(const Grid1D& grid, SpectrumFn&& transform, double z0 = 0.0) {
    SpectralField spec{grid, {}, {}, z0};
    const int n = grid.n();
    spec.wavenumbers.resize(static_cast<size_t>(n));
    spec.coeffs.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double k = grid.wavenumber(j - n / 2);
        spec.wavenumbers[static_cast<size_t>(j)] = k;
        spec.coeffs[static_cast<size_t>(j)] = cplx(transform(k)) / grid.length();
    }
    return spec;
}

double norm(const ComplexField1D& field);
std::vector<double> density(const ComplexField1D& field);

struct PhaseProfile {
    std::vector<double> values;  ///< unwrapped S (hbar = 1), meaningful where defined
    std::vector<bool> defined;   ///< false at node-adjacent samples
};

PhaseProfile phase(const ComplexField1D& field);

/// Mask of samples with |psi| > kNodeEpsilon * max|psi|.
std::vector<bool> node_mask(std::span<const cplx> values);

enum class DerivativeMethod {
    spectral,           ///< exact for periodic band-limited samples
    finite_difference,  ///< 8th-order central stencil, for non-periodic analytic samples
};

/// d^order psi / dx^order on the grid. Finite differences leave the 4 edge samples on
/// each side as NaN.
std::vector<cplx> differentiate(const ComplexField1D& field, int order,
                                DerivativeMethod method = DerivativeMethod::spectral);
std::vector<double> differentiate_real(const Grid1D& grid, std::span<const double> values,
                                       int order, DerivativeMethod method);

/// Quantum <-> optical unit mapping. All engine computation happens in the dimensionless
/// frame; this only converts at I/O.
struct UnitsMap {
    enum class Regime { quantum, optical };

    Regime regime = Regime::quantum;
    double hbar = 1.0;
    double mass = 1.0;
    double k_carrier = 1.0;
    double refractive_index = 1.0;
    double lambda0 = 0.0;
    /// Transverse length unit x0 for optical axes; physical x = x0 * u, physical z = k x0^2 * xi.
    double length_scale = 1.0;

    static UnitsMap quantum(double hbar = 1.0, double mass = 1.0, double k = 1.0);
    /// Optical beam of vacuum wavelength lambda0 in a medium of index n; k = 2 pi n / lambda0.
    static UnitsMap optical(double lambda0, double refractive_index, double length_scale);

    double x_to_physical(double x) const noexcept { return x * length_scale; }
    double z_to_physical(double z) const noexcept { return z * k_carrier * length_scale * length_scale; }
    double z_from_physical(double z_phys) const noexcept {
        return z_phys / (k_carrier * length_scale * length_scale);
    }
};

/// z = (hbar k / m) t.
double z_of_t(const UnitsMap& units, double t);
double t_of_z(const UnitsMap& units, double z);

} // namespace bohmflow
