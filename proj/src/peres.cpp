#include "bohmflow/peres.hpp"

#include "bohmflow/errors.hpp"
#include "bohmflow/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace bohmflow {
namespace {

using cd = std::complex<double>;
using std::numbers::pi;
using Pair = quad::CVec<2>;
using quad::operator+=;

// Paths are cut where |exp(i phi)| has dropped below exp(-kCutoff).
constexpr double kCutoff = 46.0;

cd amplitude(cd y) { return std::pow(1.0 + y * y, -1.0 / 3.0); }

struct Phase {
    double a;  // coefficient of y^2
    double b;  // coefficient of -y
    cd operator()(cd y) const { return y * (a * y - b); }
};

// Straight path y = origin + t * dir for t in [t0, t1].
struct Path {
    cd origin;
    cd dir;
};

std::vector<double> geometric_edges(double t0, double t1, double finest) {
    std::vector<double> tail;
    double span = t1 - t0;
    tail.push_back(t1);
    while (span > finest && tail.size() < 60) {
        span *= 0.5;
        tail.push_back(t0 + span);
    }
    tail.push_back(t0);
    return {tail.rbegin(), tail.rend()};
}

Pair integrate_path(const Phase& phase, const Path& path, const std::vector<double>& edges, double rel_tol) {
    auto integrand = [&](double t) -> Pair {
        const cd y = path.origin + t * path.dir;
        const cd g = std::exp(cd(0.0, 1.0) * phase(y)) * amplitude(y) * path.dir;
        return {g, y * g};
    };
    quad::Options opts;
    opts.rel_tol = rel_tol;
    opts.abs_tol = 1e-15;
    auto r = quad::integrate_partition<2>(integrand, edges, opts);
    if (!r.converged) throw NumericalError("Peres quadrature did not converge");
    return r.value;
}

// Integral over [X, inf) of exp(i(a y^2 - b y)) h(y) [1, y] dy.
Pair right_tail(double a, double b, double X, double rel_tol) {
    const Phase phase{a, b};
    Pair total{};
    if (a == 0.0) {
        // Linear phase: vertical ray into the half-plane where exp(-i b y) decays.
        const cd dir(0.0, b > 0 ? -1.0 : 1.0);
        const double T = kCutoff / std::abs(b);
        return integrate_path(phase, {X, dir}, geometric_edges(0.0, T, 0.5), rel_tol);
    }
    const double abs_a = std::abs(a);
    const double x_s = b / (2.0 * a);
    const double d = X - x_s;
    const cd ray = std::polar(1.0, a > 0 ? pi / 4 : -pi / 4);
    if (d > 0.0) {
        // Stationary point behind X: descend straight along the valley direction.
        const double T = 0.5 * (-std::sqrt(2.0) * d + std::sqrt(2.0 * d * d + 4.0 * kCutoff / abs_a));
        return integrate_path(phase, {X, ray}, geometric_edges(0.0, T, 0.25), rel_tol);
    }
    // Stationary point ahead of X: cross to the steepest-descent line, then follow it
    // through the saddle.
    const double ad = -d;
    double u_end = ad / std::sqrt(2.0);
    double tau_start = -u_end;
    const double tau_cut = std::sqrt(kCutoff / abs_a);
    if (abs_a * ad * ad / 2.0 > kCutoff) {
        u_end = 0.5 * (std::sqrt(2.0) * ad - std::sqrt(2.0 * ad * ad - 4.0 * kCutoff / abs_a));
        tau_start = -tau_cut;
    }
    if (u_end > 0.0) {
        const auto seg = integrate_path(phase, {X, std::conj(ray)}, geometric_edges(0.0, u_end, 0.25), rel_tol);
        total += seg;
    }
    const double width = 1.0 / std::sqrt(2.0 * abs_a);
    const int pieces = std::clamp(static_cast<int>((tau_cut - tau_start) / width), 1, 64);
    std::vector<double> edges;
    for (int i = 0; i <= pieces; ++i) edges.push_back(tau_start + (tau_cut - tau_start) * i / pieces);
    total += integrate_path(phase, {x_s, ray}, edges, rel_tol);
    return total;
}

} // namespace

std::complex<double> peres_initial(double x, double z_focus) {
    return std::polar(std::pow(1.0 + x * x, -1.0 / 3.0), -x * x / (2.0 * z_focus));
}

PeresSample peres_sample(double x, double z, double z_focus, const PeresOptions& opts) {
    if (!(z_focus > 0.0)) throw ValidationError("z_focus", "focal distance must be positive");
    if (!(z >= 0.0) || !std::isfinite(z)) throw ValidationError("z", "propagation distance must be >= 0");
    if (!std::isfinite(x)) throw ValidationError("x", "must be finite");
    if (z == 0.0) {
        const cd psi = peres_initial(x, z_focus);
        return {psi, psi * cd(-2.0 * x / (3.0 * (1.0 + x * x)), -x / z_focus)};
    }
    if (std::abs(z - z_focus) < kPeresSingularZ && std::abs(x) < kPeresSingularX)
        throw SingularError("Peres field is singular at x = 0, z = z_focus");

    const double a = 0.5 * (1.0 / z - 1.0 / z_focus);
    const double b = x / z;
    const double X = opts.core_half_width;
    const Phase phase{a, b};

    const double max_rate = 2.0 * std::abs(a) * X + std::abs(b);
    const int segments = std::clamp(static_cast<int>(2.0 * X * max_rate / pi) + 8, 8, 200000);
    auto core_integrand = [&](double y) -> Pair {
        const cd g = std::exp(cd(0.0, phase(cd(y)).real())) * std::pow(1.0 + y * y, -1.0 / 3.0);
        return {g, y * g};
    };
    quad::Options qopts;
    qopts.rel_tol = opts.rel_tol;
    // the phase itself is only known to eps * |phase|; for small z that caps the accuracy
    const double phase_noise = std::numeric_limits<double>::epsilon() * (std::abs(a) * X * X + std::abs(b) * X);
    qopts.abs_tol = std::max(1e-15, phase_noise);
    qopts.max_segments = 4 * segments + 2000;
    auto core = quad::integrate<2>(core_integrand, -X, X, qopts, segments);
    if (!core.converged) throw NumericalError("Peres core quadrature did not converge");

    const Pair right = right_tail(a, b, X, opts.rel_tol);
    const Pair left = right_tail(a, -b, X, opts.rel_tol);  // y -> -y mirror of the left tail
    const cd I0 = core.value[0] + right[0] + left[0];
    const cd I1 = core.value[1] + right[1] - left[1];

    const cd prefactor = std::polar(1.0, x * x / (2.0 * z)) / std::sqrt(cd(0.0, 2.0 * pi * z));
    const cd psi = prefactor * I0;
    // dpsi/dx = (i x / z) psi + prefactor * int (-i y / z) ... ; odd in x, exactly zero on axis.
    const cd dpsi = x == 0.0 ? cd(0.0) : cd(0.0, x / z) * psi + prefactor * cd(0.0, -1.0 / z) * I1;
    return {psi, dpsi};
}

SpectralField truncated_peres(double z_focus, double cut, const Grid1D& grid) {
    if (!(z_focus > 0.0)) throw ValidationError("z_focus", "focal distance must be positive");
    const double edge = cut / 0.9;
    if (!(cut > 0.0) || edge >= -grid.x_min() || edge >= grid.x_max())
        throw ValidationError("cut", "cut band must lie inside the grid");
    const int n = grid.n();
    std::vector<cd> v(static_cast<size_t>(n));
    for (int m = 0; m < n; ++m) {
        const double a = std::abs(grid.x(m));
        const double w = a <= cut ? 1.0 : a >= edge ? 0.0 : 0.5 * (1.0 + std::cos(pi * (a - cut) / (edge - cut)));
        v[static_cast<size_t>(m)] = w * peres_initial(grid.x(m), z_focus);
    }
    auto spec = to_spectral(ComplexField1D(grid, std::move(v), 0.0));
    double peak = 0.0;
    for (const auto& c : spec.coeffs) peak = std::max(peak, std::abs(c));
    // drop modes at round-off level; they only slow the plane-wave sums
    for (auto& c : spec.coeffs)
        if (std::abs(c) < 1e-17 * peak) c = 0.0;
    return spec;
}

} // namespace bohmflow
