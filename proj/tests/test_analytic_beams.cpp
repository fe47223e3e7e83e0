#include "oracles.hpp"

#include "bohmflow/airy.hpp"
#include "bohmflow/beams.hpp"
#include "bohmflow/errors.hpp"
#include "bohmflow/peres.hpp"

#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace bohmflow;
using std::numbers::pi;

namespace {

// Fourth-order central differences of psi in z and x, and the paraxial residual i psi_z + psi_xx / 2.
struct Stencil {
    cplx dz, dx, dxx;
};

Stencil stencil(const BeamSpec& s, double x, double z, double h) {
    auto f = [&](double xx, double zz) { return field_at(s, xx, zz); };
    const cplx c = f(x, z);
    Stencil r;
    r.dz = (f(x, z - 2 * h) - 8.0 * f(x, z - h) + 8.0 * f(x, z + h) - f(x, z + 2 * h)) / (12 * h);
    r.dx = (f(x - 2 * h, z) - 8.0 * f(x - h, z) + 8.0 * f(x + h, z) - f(x + 2 * h, z)) / (12 * h);
    r.dxx = (-f(x - 2 * h, z) + 16.0 * f(x - h, z) - 30.0 * c + 16.0 * f(x + h, z) - f(x + 2 * h, z)) / (12 * h * h);
    return r;
}

} // namespace

TEST_CASE("airy_real against Boost over the working range") {
    double worst = 0.0, at = 0.0;
    for (double s = -30.0; s <= 10.0; s += 0.01) {
        const double ref = oracle::ai(s);
        const double scale = s > 0 ? std::abs(ref) : std::max(std::abs(ref), std::pow(-s, -0.25) / std::sqrt(pi) * 1e-3);
        const double err = std::abs(airy_real(s) - ref) / scale;
        if (err > worst) worst = err, at = s;
        CHECK(airy_real_prime(s) == doctest::Approx(oracle::ai_prime(s)).epsilon(1e-9).scale(1.0));
    }
    INFO("worst at s = ", at);
    CHECK(worst < 1e-11);
}

TEST_CASE("airy_real against tabulated values") {
    for (const auto& p : oracle::kAiryReal) CHECK(airy_real(p.s) == doctest::Approx(p.value).epsilon(1e-12));
    CHECK(airy_real_prime(0.0) == doctest::Approx(oracle::kAiryPrimeAtZero).epsilon(1e-13));
    CHECK(airy_real(10.0) < 1e-4);
}

TEST_CASE("Ai(0) by quadrature of the Airy integral") {
    // Ai(0) = (1/pi) int_0^inf cos(t^3/3) dt; rotating t = u e^{i pi/6} gives a decaying integrand.
    boost::math::quadrature::exp_sinh<double> integrator;
    const cplx rot = std::polar(1.0, pi / 6.0);
    const double re = integrator.integrate([&](double u) { return std::real(rot * std::exp(cplx(0, 1) * std::pow(rot * u, 3) / 3.0)); });
    CHECK(airy_real(0.0) == doctest::Approx(re / pi).epsilon(1e-12));
    CHECK(airy_real(0.0) == doctest::Approx(std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("first Airy zero is bracketed") {
    auto [lo, hi] = boost::math::tools::bisect([](double s) { return airy_real(s); }, -2.5, -2.2,
                                               boost::math::tools::eps_tolerance<double>(40));
    CHECK(hi - lo < 1e-6);
    CHECK(0.5 * (lo + hi) == doctest::Approx(oracle::kAiryZeros[0]).epsilon(1e-7));
}

TEST_CASE("airy zeros and maxima tables") {
    for (int k = 1; k <= 10; ++k) {
        CHECK(airy_zero(k) == doctest::Approx(oracle::kAiryZeros[k - 1]).epsilon(1e-13));
        CHECK(airy_zero(k) == doctest::Approx(oracle::ai_zero(k)).epsilon(1e-13));
        CHECK(airy_prime_zero(k) == doctest::Approx(oracle::kAiryMaxima[k - 1]).epsilon(1e-13));
        CHECK(std::abs(oracle::ai_prime(airy_prime_zero(k))) < 1e-12);
    }
    CHECK(airy_zero(40) == doctest::Approx(oracle::ai_zero(40)).epsilon(1e-12));
}

TEST_CASE("complex Airy against tabulated values") {
    for (const auto& p : oracle::kAiryComplex) {
        const cplx v = airy_complex(p.y);
        CHECK(std::abs(v - p.value) < 1e-12 * std::abs(p.value));
    }
    CHECK(std::abs(airy_complex_prime({0.5, 0.11}) - oracle::kAiryPrimeAtHalf) < 1e-12);
}

TEST_CASE("complex Airy restricted to the real axis, reflection and small-argument Taylor") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> re(-25, 8), im(-6, 6);
    for (int i = 0; i < 200; ++i) {
        const double s = re(rng);
        CHECK(std::abs(airy_complex({s, 0.0}) - airy_real(s)) <= 1e-15 * (1 + std::abs(airy_real(s))));
        const cplx y(re(rng), im(rng));
        const cplx a = airy_complex(y), b = airy_complex(std::conj(y));
        CHECK(std::abs(a - std::conj(b)) <= 1e-14 * std::abs(a));
    }
    for (double z : {1e-4, 1e-3, 1e-2}) {
        const cplx y(0.0, 0.11 * z);
        const cplx taylor = oracle::kAiryReal[0].value + y * oracle::kAiryPrimeAtZero;
        CHECK(std::abs(airy_complex(y) - taylor) < std::norm(y));
    }
    CHECK_THROWS_AS(airy({0.0, 60.0}), ValidationError);
}

TEST_CASE("complex Airy satisfies Ai'' = y Ai") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> re(-20, 8), im(-5, 5);
    for (int i = 0; i < 200; ++i) {
        const cplx y(re(rng), im(rng));
        const double h = 1e-4;
        const cplx d2 = (airy_complex_prime(y + h) - airy_complex_prime(y - h)) / (2 * h);
        CHECK(std::abs(d2 - y * airy_complex(y)) < 1e-7 * (1 + std::abs(y * airy_complex(y))));
    }
}

TEST_CASE("BeamSpec validation") {
    CHECK_NOTHROW(validate(BeamSpec::ideal_airy()));
    CHECK_NOTHROW(validate(BeamSpec::finite_airy(0.11)));
    CHECK_THROWS_AS(validate(BeamSpec::finite_airy(-0.1)), ValidationError);
    CHECK_THROWS_AS(validate(BeamSpec::gaussian(0.0)), ValidationError);
    CHECK_THROWS_AS(validate(BeamSpec::peres(0.0)), ValidationError);
    BeamSpec odd = BeamSpec::gaussian(1.0);
    odd.gamma = 0.2;
    try {
        validate(odd);
        FAIL("expected rejection");
    } catch (const ValidationError& e) {
        CHECK(e.field() == "gamma");
    }
    CHECK(family_from_string("GeneralizedGaussian") == BeamFamily::GeneralizedGaussian);
    CHECK_THROWS_AS(family_from_string("Bessel"), ValidationError);
}

TEST_CASE("ideal Airy field is shape invariant and accelerates") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> xs(-20, 10), zs(0, 10);
    const auto spec = BeamSpec::ideal_airy();
    for (int m = 0; m < 200; ++m) {
        const double x = xs(rng), z = zs(rng);
        CHECK(std::abs(std::abs(field_at(spec, x, z)) - std::abs(oracle::ai(x - z * z / 4))) < 1e-10);
        CHECK(std::abs(field_at(spec, x, z) - oracle::ideal_airy(x, z)) < 1e-10);
    }
    CHECK(field_at(spec, 1.3, 0.0) == cplx(airy_real(1.3)));
    CHECK(trajectory_exact(spec, 0.0, 2.0) == doctest::Approx(1.0));
}

TEST_CASE("finite Airy with zero apodization is the ideal beam") {
    for (double x : {-12.0, -3.3, 0.0, 4.0})
        for (double z : {0.0, 1.0, 7.5}) {
            CHECK(field_at(BeamSpec::finite_airy(0.0), x, z) == field_at(BeamSpec::ideal_airy(), x, z));
            CHECK(velocity_exact(BeamSpec::finite_airy(1e-9), x + 0.1, z) == doctest::Approx(z / 2).epsilon(1e-6));
        }
}

TEST_CASE("closed-form fields solve the paraxial equation") {
    // i psi_z = -psi_xx / 2, checked with central differences.
    const std::vector<BeamSpec> specs = {BeamSpec::ideal_airy(), BeamSpec::finite_airy(0.11), BeamSpec::gaussian(0.8),
                                         BeamSpec::generalized_gaussian(0.9, 1.0)};
    for (const auto& s : specs)
        for (double x : {-5.0, -1.2, 0.4, 2.0})
            for (double z : {0.3, 1.7}) {
                const auto st = stencil(s, x, z, 5e-3);
                CHECK(std::abs(cplx(0, 1) * st.dz + 0.5 * st.dxx) < 1e-6 * (1 + std::abs(st.dxx)));
                CHECK(std::abs(field_sample(s, x, z).dpsi - st.dx) < 1e-8 * (1 + std::abs(st.dx)));
            }
}

TEST_CASE("Gaussian field, rays and velocity match the Fresnel closed form") {
    const auto s = BeamSpec::gaussian(1.0);
    for (double x : {-3.0, 0.0, 0.5, 2.0})
        for (double z : {0.0, 0.7, 2.0, 5.0}) {
            CHECK(std::abs(field_at(s, x, z) - oracle::gaussian(1.0, x, z)) < 1e-14);
            CHECK(velocity_exact(s, x, z) == doctest::Approx(oracle::gaussian_velocity(1.0, x, z)).epsilon(1e-12).scale(1e-15));
            CHECK(trajectory_exact(s, x, z) == doctest::Approx(oracle::gaussian_ray(1.0, x, z)));
        }
    CHECK(trajectory_exact(s, 1.0, 0.0) == 1.0);
    // (x, z) = (1, 2): the phase slope by finite differences
    CHECK(velocity_exact(s, 1.0, 2.0) == doctest::Approx(0.25).epsilon(1e-12));
    const double fd = oracle::phase_slope([&](double x) { return field_at(s, x, 2.0); }, 1.0);
    CHECK(std::abs(fd - 0.25) < 1e-8);
}

TEST_CASE("sigma_pair and width_phase") {
    const auto [plus, minus] = sigma_pair(2.579, 1.0);
    CHECK(plus == doctest::Approx(2.571).epsilon(0.002 / 2.571));
    CHECK(minus == doctest::Approx(0.194).epsilon(0.002 / 0.194));
    for (double s : {plus, minus}) CHECK(width_phase(s, 1.0, 0.0).modulus == doctest::Approx(2.579).epsilon(1e-12));
    CHECK(width_phase(plus, 1.0, 0.0).arg / pi == doctest::Approx(-0.024).epsilon(0.002 / 0.024));
    CHECK(width_phase(minus, 1.0, 0.0).arg / pi == doctest::Approx(-0.477).epsilon(0.002 / 0.477));
    const auto at_focus = width_phase(0.6, 1.0, 1.0);
    CHECK(at_focus.modulus == 0.6);
    CHECK(at_focus.arg == 0.0);

    const double sg = 1.7;
    const auto [a, b] = sigma_pair(sg, sg * sg);
    CHECK(a == doctest::Approx(sg / std::sqrt(2.0)));
    CHECK(b == doctest::Approx(sg / std::sqrt(2.0)));
    CHECK_THROWS_AS(sigma_pair(1.0, 2.0), ValidationError);
}

TEST_CASE("generalized Gaussian focuses to its waist") {
    const auto [plus, minus] = sigma_pair(peres_sigma_g0(), 1.0);
    const auto s = BeamSpec::generalized_gaussian(minus, 1.0);
    CHECK(trajectory_exact(s, 1.0, 1.0) == doctest::Approx(minus / peres_sigma_g0()));
    CHECK(trajectory_exact(s, 1.0, 1.0) == doctest::Approx(0.0752).epsilon(0.002));
    CHECK(velocity_exact(s, 0.8, 1.0) == doctest::Approx(0.0).scale(1.0));
    (void)plus;
}

TEST_CASE("Peres Gaussian counterpart matches the tenth-of-maximum points") {
    CHECK(peres_sigma_g0() == doctest::Approx(2.579).epsilon(0.001 / 2.579));
    // Peres density (1 + x^2)^(-2/3) is a tenth of its peak where this bracket closes.
    auto [lo, hi] = boost::math::tools::bisect([](double x) { return std::norm(peres_initial(x, 1.0)) - 0.1; }, 1.0, 10.0,
                                               boost::math::tools::eps_tolerance<double>(50));
    const double xt = 0.5 * (lo + hi);
    const double sg = peres_sigma_g0();
    const double ratio = std::exp(-xt * xt / (2 * sg * sg));
    CHECK(ratio == doctest::Approx(0.1).epsilon(1e-9));
    const auto [plus, minus] = sigma_pair(sg, 1.0);
    CHECK(plus == doctest::Approx(2.571).epsilon(0.001));
    CHECK(minus == doctest::Approx(0.194).epsilon(0.01));
}

TEST_CASE("Peres field: initial data, derivatives and focal growth") {
    const auto s = BeamSpec::peres(1.0);
    for (double x : {-7.0, -1.0, 0.0, 0.3, 12.0}) {
        const cplx ref = std::exp(cplx(0, -x * x / 2)) / std::cbrt(1 + x * x);
        CHECK(std::abs(field_at(s, x, 0.0) - ref) < 1e-14);
    }
    double prev = 0.0;
    for (double z : {0.9, 0.99, 0.999}) {
        const double a = std::abs(field_at(s, 0.0, z));
        CHECK(a > prev);
        prev = a;
    }
    CHECK_THROWS_AS(field_at(s, 0.0, 1.0), SingularError);
    // PDE residual of the quadrature field
    for (double x : {-2.0, 0.5, 3.0})
        for (double z : {0.4, 1.6}) {
            const auto st = stencil(s, x, z, 5e-3);
            CHECK(std::abs(cplx(0, 1) * st.dz + 0.5 * st.dxx) < 1e-5 * (1 + std::abs(st.dxx)));
            CHECK(std::abs(field_sample(s, x, z).dpsi - st.dx) < 1e-7 * (1 + std::abs(st.dx)));
        }
    // mirror symmetry of the initial data carries over
    CHECK(std::abs(field_at(s, 1.3, 0.7) - field_at(s, -1.3, 0.7)) < 1e-10);
    CHECK_THROWS_AS(spectrum_at(s, 1.0), ValidationError);
}

TEST_CASE("spectra are the Fourier transforms of the initial fields") {
    // F(k) = int psi(x, 0) e^{-ikx} dx by trapezoid on a wide window
    const std::vector<BeamSpec> specs = {BeamSpec::finite_airy(0.2), BeamSpec::gaussian(0.9), BeamSpec::generalized_gaussian(0.7, 1.0)};
    for (const auto& s : specs)
        for (double k : {-1.5, 0.0, 0.8, 2.0}) {
            cplx sum = 0.0;
            const double dx = 0.01;
            for (double x = -250; x <= 60; x += dx) sum += field_at(s, x, 0.0) * std::polar(1.0, -k * x);
            sum *= dx;
            CHECK(std::abs(spectrum_at(s, k) - sum) < 1e-8 * (1 + std::abs(sum)));
        }
}

TEST_CASE("sample_field flags the Peres focus") {
    const auto g = make_grid(-1, 1, 8);
    const auto f = sample_field(BeamSpec::peres(1.0), g, 1.0);
    CHECK(f.singular());
    CHECK(std::isinf(std::abs(f[4])));
    CHECK_FALSE(sample_field(BeamSpec::peres(1.0), g, 0.5).singular());
}
