#include "oracles.hpp"

#include "bohmflow/beams.hpp"
#include "bohmflow/errors.hpp"
#include "bohmflow/peres.hpp"
#include "bohmflow/propagator.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace bohmflow;

namespace {

ComplexField1D sampled(const Grid1D& g, auto&& f, double z = 0.0) {
    std::vector<cplx> v;
    for (int m = 0; m < g.n(); ++m) v.push_back(f(g.x(m)));
    return ComplexField1D(g, std::move(v), z);
}

double max_diff(const ComplexField1D& a, const ComplexField1D& b) {
    double d = 0.0;
    for (int m = 0; m < a.grid().n(); ++m) d = std::max(d, std::abs(a[m] - b[m]));
    return d;
}

} // namespace

TEST_CASE("zero step is the identity and plane waves pick up a global phase") {
    const auto g = make_grid(-5, 5, 128);
    const double k = g.wavenumber(7);
    const auto wave = sampled(g, [&](double x) { return std::polar(1.0, k * x); });
    CHECK(max_diff(free_propagate(wave, 0.0), wave) < 1e-14);
    const auto moved = free_propagate(wave, 0.8);
    CHECK(moved.z() == doctest::Approx(0.8));
    const cplx ph = std::polar(1.0, -0.5 * k * k * 0.8);
    for (int m = 0; m < g.n(); ++m) CHECK(std::abs(moved[m] - wave[m] * ph) < 1e-12);
    CHECK_THROWS_AS(free_propagate(wave, -0.1), ValidationError);
}

TEST_CASE("Gaussian propagated spectrally matches the closed form") {
    const auto g = make_grid(-12, 12, 512);
    const auto f0 = sample_field(BeamSpec::gaussian(1.0), g, 0.0);
    const auto f2 = free_propagate(f0, 2.0);
    double worst = 0.0;
    for (int m = 0; m < g.n(); ++m) {
        const double x = g.x(m);
        if (std::abs(x) > 0.8 * 12) continue;
        worst = std::max(worst, std::abs(f2[m] - oracle::gaussian(1.0, x, 2.0)));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("norm is conserved by free propagation") {
    const auto g = make_grid(-60, 40, 2048);
    const auto f = sample_field(BeamSpec::finite_airy(0.2), g, 0.0);
    const double n0 = norm(f);
    for (double dz : {0.1, 3.0, 50.0}) CHECK(std::abs(norm(free_propagate(f, dz)) - n0) < 1e-10 * n0);
}

TEST_CASE("plans: single target, kept snapshots, exact z values") {
    const auto g = make_grid(-12, 12, 256);
    const auto f0 = sample_field(BeamSpec::gaussian(1.0), g, 0.0);
    PropagationPlan one;
    one.z_targets = {1.3};
    const auto r = propagate_plan(f0, one);
    REQUIRE(r.size() == 1);
    CHECK(max_diff(r[0], free_propagate(f0, 1.3)) < 1e-13);

    PropagationPlan many;
    for (int i = 1; i <= 10; ++i) many.z_targets.push_back(0.1 * i);
    many.keep_every = 3;
    const auto kept = propagate_plan(f0, many);
    std::vector<double> zs;
    for (const auto& f : kept) zs.push_back(f.z());
    CHECK(zs == std::vector<double>{0.1 * 1, 0.1 * 4, 0.1 * 7, 0.1 * 10});

    PropagationPlan bad;
    bad.z_targets = {0.5, 0.4};
    try {
        propagate_plan(f0, bad);
        FAIL("expected rejection");
    } catch (const ValidationError& e) {
        CHECK(e.field() == "z_targets[1]");
    }
}

TEST_CASE("ideal Airy main lobe accelerates along z^2/4") {
    const auto g = make_grid(-400, 100, 4096);
    const auto band = BandLimitedAiry::for_grid(g);
    const auto f0 = from_spectral(sample_spectrum(g, [&](double k) { return band.spectrum(k); }));
    auto peak_x = [&](const ComplexField1D& f) {
        int best = 0;
        for (int m = 0; m < g.n(); ++m)
            if (g.x(m) > -30 && std::norm(f[m]) > std::norm(f[best])) best = m;
        return g.x(best);
    };
    const double p0 = peak_x(f0);
    CHECK(std::abs(p0 - oracle::kAiryMaxima[0]) <= g.dx());
    PropagationPlan plan;
    for (int z = 1; z <= 10; ++z) plan.z_targets.push_back(z);
    for (const auto& f : propagate_plan(f0, plan)) CHECK(std::abs(peak_x(f) - p0 - f.z() * f.z() / 4) <= g.dx());
}

TEST_CASE("windows") {
    const auto g = make_grid(-1, 1, 1000);
    const auto flat = sampled(g, [](double) { return cplx(1.0); });
    // band of 250 samples at each end, x_min shared: 499 zeroed
    CHECK(norm(truncate_window(flat, 0.5, WindowProfile::hard)) == doctest::Approx(501 * g.dx()));
    const auto even = truncate_window(sampled(g, [](double x) { return cplx(std::exp(-x * x)); }), 0.3, WindowProfile::cosine_taper);
    for (int m = 1; m < g.n(); ++m) CHECK(std::abs(even[m] - even[g.n() - m]) < 1e-14);
    const auto thin = truncate_window(flat, 1e-4, WindowProfile::cosine_taper);
    CHECK(max_diff(thin, flat) < 1e-12);
    const auto tapered = truncate_window(flat, 0.2, WindowProfile::cosine_taper);
    CHECK(std::abs(tapered[0]) < 0.01);
    CHECK(tapered[500] == cplx(1.0));
    for (int m = 1; m < 100; ++m) CHECK(std::abs(tapered[m]) >= std::abs(tapered[m - 1]));
    CHECK_THROWS_AS(truncate_window(flat, 1.5, WindowProfile::hard), ValidationError);
}

TEST_CASE("Peres data tapered at its 2% support stays band limited") {
    // cosine band over |x| in (15, 16.67): the window closes where the density is ~2% of peak
    const auto g = make_grid(-15.0 / 0.9, 15.0 / 0.9, 1024);
    const auto f = truncate_window(sample_field(BeamSpec::peres(1.0), g, 0.0), 0.1, WindowProfile::cosine_taper);
    const auto spec = to_spectral(free_propagate(f, 0.5));
    double high = 0.0, total = 0.0;
    for (size_t j = 0; j < spec.coeffs.size(); ++j) {
        const double e = std::norm(spec.coeffs[j]);
        total += e;
        if (std::abs(spec.wavenumbers[j]) > 0.9 * g.k_max()) high += e;
    }
    CHECK(high < 1e-6 * total);
}

TEST_CASE("spectrally propagated Peres data blow up on axis near the focus") {
    const auto g = make_grid(-40, 40, 2048);
    const auto f0 = sample_field(BeamSpec::peres(1.0), g, 0.0);
    PropagationPlan plan;
    for (int i = 0; i <= 80; ++i) plan.z_targets.push_back(0.8 + 0.005 * i);
    plan.window = WindowSpec{0.1, WindowProfile::cosine_taper};
    const auto snaps = propagate_plan(truncate_window(f0, 0.1, WindowProfile::cosine_taper), plan);
    double best = -1.0, z_best = 0.0;
    for (const auto& s : snaps) {
        const double on_axis = std::norm(s[g.n() / 2]);
        if (on_axis > best) best = on_axis, z_best = s.z();
    }
    REQUIRE(g.x(g.n() / 2) == 0.0);
    CHECK(std::abs(z_best - 1.0) <= 0.02);
}

TEST_CASE("edge density ratio flags fields touching the boundary") {
    const auto g = make_grid(-10, 10, 400);
    CHECK(edge_density_ratio(sample_field(BeamSpec::gaussian(1.0), g, 0.0)) < 1e-8);
    CHECK(edge_density_ratio(sample_field(BeamSpec::peres(1.0), g, 0.0)) > 1e-3);
}
