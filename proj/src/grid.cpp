#include "bohmflow/grid.hpp"

#include "bohmflow/errors.hpp"
#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bohmflow {

using std::numbers::pi;

Grid1D::Grid1D(double x_min, double x_max, int n)
    : x_min_(x_min), x_max_(x_max), n_(n), dx_((x_max - x_min) / n) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min))
        throw ValidationError("x_max", "x_max must exceed x_min");
    if (n < 8) throw ValidationError("n", "need at least 8 samples");
    if (n % 2 != 0) throw ValidationError("n", "sample count must be even");
}

std::vector<double> Grid1D::points() const {
    std::vector<double> xs(static_cast<size_t>(n_));
    for (int m = 0; m < n_; ++m) xs[static_cast<size_t>(m)] = x(m);
    return xs;
}

double Grid1D::wavenumber(int j) const noexcept { return 2.0 * pi * j / length(); }
double Grid1D::dk() const noexcept { return 2.0 * pi / length(); }
double Grid1D::k_max() const noexcept { return pi / dx_; }

Grid1D make_grid(double x_min, double x_max, int n) { return Grid1D(x_min, x_max, n); }

ComplexField1D::ComplexField1D(Grid1D grid, std::vector<cplx> values, double z, bool singular)
    : grid_(grid), values_(std::move(values)), z_(z), singular_(singular) {
    if (values_.size() != static_cast<size_t>(grid_.n()))
        throw ValidationError("values", "length does not match grid");
    if (!singular_) {
        for (const auto& v : values_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw ValidationError("values", "non-finite amplitude in a non-singular field");
    }
}

double ComplexField1D::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

namespace {

// exp(i * 2 pi * j * x / L) with the integer part of j*x/L removed first.
cplx unit_phase(int j, double x, double length) {
    double turns = static_cast<double>(j) * (x / length);
    turns -= std::round(turns);
    return std::polar(1.0, 2.0 * pi * turns);
}

void require_regular(const ComplexField1D& field, const char* op) {
    if (field.singular()) throw ValidationError("field", std::string(op) + " needs a non-singular field");
}

} // namespace

SpectralField to_spectral(const ComplexField1D& field) {
    require_regular(field, "to_spectral");
    const Grid1D& g = field.grid();
    const int n = g.n();
    auto raw = detail::fft_forward(field.values());
    SpectralField spec{g, std::vector<double>(static_cast<size_t>(n)), std::vector<cplx>(static_cast<size_t>(n)),
                       field.z()};
    for (int j = -n / 2; j < n / 2; ++j) {
        const size_t slot = static_cast<size_t>(j + n / 2);
        const size_t natural = static_cast<size_t>((j + n) % n);
        spec.wavenumbers[slot] = g.wavenumber(j);
        spec.coeffs[slot] = raw[natural] * std::conj(unit_phase(j, g.x_min(), g.length())) / double(n);
    }
    return spec;
}

ComplexField1D from_spectral(const SpectralField& spec) {
    const Grid1D& g = spec.grid;
    const int n = g.n();
    if (spec.coeffs.size() != static_cast<size_t>(n) || spec.wavenumbers.size() != spec.coeffs.size())
        throw ValidationError("coeffs", "spectrum length does not match grid");
    std::vector<cplx> natural(static_cast<size_t>(n));
    for (int j = -n / 2; j < n / 2; ++j) {
        const size_t slot = static_cast<size_t>(j + n / 2);
        natural[static_cast<size_t>((j + n) % n)] = spec.coeffs[slot] * unit_phase(j, g.x_min(), g.length());
    }
    return ComplexField1D(g, detail::fft_backward(natural), spec.z0);
}

cplx SpectralField::evaluate(double x, double z) const {
    cplx sum = 0.0;
    const double dz = z - z0;
    for (size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] == 0.0) continue;
        const double k = wavenumbers[j];
        sum += coeffs[j] * std::polar(1.0, k * x - 0.5 * k * k * dz);
    }
    return sum;
}

double norm(const ComplexField1D& field) {
    require_regular(field, "norm");
    double s = 0.0;
    for (const auto& v : field.values()) s += std::norm(v);
    return s * field.grid().dx();
}

std::vector<double> density(const ComplexField1D& field) {
    require_regular(field, "density");
    std::vector<double> rho;
    rho.reserve(field.values().size());
    for (const auto& v : field.values()) rho.push_back(std::norm(v));
    return rho;
}

std::vector<bool> node_mask(std::span<const cplx> values) {
    double peak = 0.0;
    for (const auto& v : values) peak = std::max(peak, std::abs(v));
    const double floor = kNodeEpsilon * peak;
    std::vector<bool> mask(values.size());
    for (size_t i = 0; i < values.size(); ++i) mask[i] = peak > 0.0 && std::abs(values[i]) > floor;
    return mask;
}

PhaseProfile phase(const ComplexField1D& field) {
    require_regular(field, "phase");
    const auto vals = field.values();
    PhaseProfile out{std::vector<double>(vals.size(), std::numeric_limits<double>::quiet_NaN()),
                     node_mask(vals)};
    bool have_prev = false;
    double prev_raw = 0.0, prev_unwrapped = 0.0;
    for (size_t i = 0; i < vals.size(); ++i) {
        if (!out.defined[i]) continue;
        const double raw = std::arg(vals[i]);
        if (!have_prev) {
            out.values[i] = raw;
            have_prev = true;
        } else {
            double d = raw - prev_raw;
            d -= 2.0 * pi * std::round(d / (2.0 * pi));
            out.values[i] = prev_unwrapped + d;
        }
        prev_raw = raw;
        prev_unwrapped = out.values[i];
    }
    return out;
}

namespace {

// 8th-order central stencils, half-width 4.
constexpr double kD1[] = {1.0 / 280, -4.0 / 105, 1.0 / 5, -4.0 / 5, 0.0, 4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
constexpr double kD2[] = {-1.0 / 560, 8.0 / 315, -1.0 / 5,  8.0 / 5,   -205.0 / 72,
                          8.0 / 5,    -1.0 / 5,  8.0 / 315, -1.0 / 560};

template <class T>
std::vector<T> fd_apply(std::span<const T> v, const double (&stencil)[9], double scale) {
    const size_t n = v.size();
    std::vector<T> out(n, T(std::numeric_limits<double>::quiet_NaN()));
    for (size_t i = 4; i + 4 < n; ++i) {
        T acc = T(0.0);
        for (size_t s = 0; s < 9; ++s) acc += stencil[s] * v[i + s - 4];
        out[i] = acc * scale;
    }
    return out;
}

template <class T>
std::vector<T> fd_derivative(std::span<const T> v, double dx, int order) {
    std::vector<T> cur(v.begin(), v.end());
    while (order >= 2) {
        cur = fd_apply<T>(cur, kD2, 1.0 / (dx * dx));
        order -= 2;
    }
    if (order == 1) cur = fd_apply<T>(cur, kD1, 1.0 / dx);
    return cur;
}

std::vector<cplx> spectral_derivative(const Grid1D& g, std::span<const cplx> v, int order) {
    const int n = g.n();
    auto raw = detail::fft_forward(v);
    for (int j = -n / 2; j < n / 2; ++j) {
        auto& c = raw[static_cast<size_t>((j + n) % n)];
        if (j == -n / 2 && order % 2 == 1) {
            c = 0.0;
            continue;
        }
        c *= std::pow(cplx(0.0, g.wavenumber(j)), order) / double(n);
    }
    return detail::fft_backward(raw);
}

} // namespace

std::vector<cplx> differentiate(const ComplexField1D& field, int order, DerivativeMethod method) {
    require_regular(field, "differentiate");
    if (order < 0) throw ValidationError("order", "derivative order must be non-negative");
    if (method == DerivativeMethod::spectral) return spectral_derivative(field.grid(), field.values(), order);
    return fd_derivative<cplx>(field.values(), field.grid().dx(), order);
}

std::vector<double> differentiate_real(const Grid1D& grid, std::span<const double> values, int order,
                                       DerivativeMethod method) {
    if (values.size() != static_cast<size_t>(grid.n()))
        throw ValidationError("values", "length does not match grid");
    if (method == DerivativeMethod::finite_difference) return fd_derivative<double>(values, grid.dx(), order);
    std::vector<cplx> tmp(values.begin(), values.end());
    auto d = spectral_derivative(grid, tmp, order);
    std::vector<double> out(d.size());
    for (size_t i = 0; i < d.size(); ++i) out[i] = d[i].real();
    return out;
}

UnitsMap UnitsMap::quantum(double hbar, double mass, double k) {
    if (!(hbar > 0)) throw ValidationError("hbar", "must be positive");
    if (!(mass > 0)) throw ValidationError("mass", "must be positive");
    if (!(k > 0)) throw ValidationError("k_carrier", "must be positive");
    UnitsMap u;
    u.regime = Regime::quantum;
    u.hbar = hbar;
    u.mass = mass;
    u.k_carrier = k;
    return u;
}

UnitsMap UnitsMap::optical(double lambda0, double refractive_index, double length_scale) {
    if (!(lambda0 > 0)) throw ValidationError("lambda0", "must be positive");
    if (!(refractive_index > 0)) throw ValidationError("refractive_index", "must be positive");
    if (!(length_scale > 0)) throw ValidationError("length_scale", "must be positive");
    UnitsMap u;
    u.regime = Regime::optical;
    u.lambda0 = lambda0;
    u.refractive_index = refractive_index;
    u.length_scale = length_scale;
    u.k_carrier = 2.0 * pi * refractive_index / lambda0;
    return u;
}

double z_of_t(const UnitsMap& units, double t) { return units.hbar * units.k_carrier / units.mass * t; }

double t_of_z(const UnitsMap& units, double z) { return z * units.mass / (units.hbar * units.k_carrier); }

} // namespace bohmflow
