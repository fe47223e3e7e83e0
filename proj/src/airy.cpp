#include "bohmflow/airy.hpp"

#include "bohmflow/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace bohmflow {
namespace {

using cd = std::complex<double>;
using cld = std::complex<long double>;
using std::numbers::pi;

// Ai(0) and -Ai'(0).
constexpr long double kC1 = 0.355028053887817239260063186004183176L;
constexpr long double kC2 = 0.258819403792806798405183560189203963L;

// Beyond kOuterRadius the asymptotic expansions are used everywhere. In the decaying
// sector |arg y| < pi/3 the power series loses digits to cancellation from kDecayRadius on,
// and the asymptotic series is only good to ~exp(-2 zeta), so between kDecayRadius and
// kRayRadius the value is carried inward along the ray from |y| = kRayRadius by Taylor
// steps of Ai'' = y Ai (inward is the growing direction there, so this is stable).
constexpr double kOuterRadius = 8.0;
constexpr double kDecayRadius = 5.0;
constexpr double kRayRadius = 10.0;

constexpr int kMaxTerms = 64;

// u_k, v_k of the Airy asymptotic expansions.
struct AsymptoticCoeffs {
    std::array<double, kMaxTerms> u{};
    std::array<double, kMaxTerms> v{};

    AsymptoticCoeffs() {
        u[0] = v[0] = 1.0;
        for (int k = 1; k < kMaxTerms; ++k) {
            const double kk = k;
            u[k] = u[k - 1] * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) / ((2 * kk - 1) * 216 * kk);
            v[k] = -(6 * kk + 1) / (6 * kk - 1) * u[k];
        }
    }
};

const AsymptoticCoeffs& coeffs() {
    static const AsymptoticCoeffs c;
    return c;
}

AiryValue maclaurin(cd y) {
    const cld z(y.real(), y.imag());
    const cld z3 = z * z * z;
    const long double eps = 1e-21L;

    cld f = 1.0L, t = 1.0L;     // f = sum t_k, t_k = z^{3k} / prod (3i-1)(3i)
    cld g = z, s = z;           // g = sum s_k, s_k = z^{3k+1} / prod (3i)(3i+1)
    cld fp = 0.0L, p = 0.0L;    // f' = sum p_k, p_1 = z^2/2
    cld gp = 1.0L, q = 1.0L;    // g' = sum q_k
    for (int k = 1; k < 200; ++k) {
        const long double kk = k;
        t *= z3 / ((3 * kk - 1) * (3 * kk));
        s *= z3 / ((3 * kk) * (3 * kk + 1));
        p = (k == 1) ? z * z / 2.0L : p * z3 / ((3 * kk - 3) * (3 * kk - 1));
        q *= z3 / ((3 * kk - 2) * (3 * kk));
        f += t;
        g += s;
        fp += p;
        gp += q;
        const long double scale = std::abs(f) + std::abs(g) + std::abs(fp) + std::abs(gp);
        if (kk > std::abs(z) && std::abs(t) + std::abs(s) + std::abs(p) + std::abs(q) < eps * scale) break;
    }
    const cld ai = kC1 * f - kC2 * g;
    const cld aip = kC1 * fp - kC2 * gp;
    return {cd(double(ai.real()), double(ai.imag())), cd(double(aip.real()), double(aip.imag()))};
}

// Sum of (-1)^k c_k x^k with c in {u, v}, stride/offset picking even or odd terms,
// truncated at the smallest term.
cd asymptotic_sum(const std::array<double, kMaxTerms>& c, cd inv_zeta, int offset, int stride) {
    cd sum = 0.0;
    double last = HUGE_VAL;
    const cd step = std::pow(inv_zeta, stride);
    cd power = std::pow(inv_zeta, offset);
    for (int k = offset, i = 0; k < kMaxTerms; k += stride, ++i) {
        const cd term = ((i % 2) ? -1.0 : 1.0) * c[static_cast<size_t>(k)] * power;
        const double mag = std::abs(term);
        if (mag > last) break;
        sum += term;
        if (mag < 1e-17 * std::abs(sum)) break;
        last = mag;
        power *= step;
    }
    return sum;
}

AiryValue asymptotic(cd y) {
    const auto& c = coeffs();
    const double sqrt_pi = std::sqrt(pi);
    if (std::abs(std::arg(y)) <= 2.0 * pi / 3.0) {
        const cd zeta = 2.0 / 3.0 * y * std::sqrt(y);
        const cd inv = 1.0 / zeta;
        const cd e = std::exp(-zeta);
        const cd quarter = std::pow(y, 0.25);
        // Alternating sign in the expansion comes from (-1)^k with 1/zeta^k.
        const cd su = asymptotic_sum(c.u, inv, 0, 1);
        const cd sv = asymptotic_sum(c.v, inv, 0, 1);
        return {e / (2.0 * sqrt_pi * quarter) * su, -quarter * e / (2.0 * sqrt_pi) * sv};
    }
    const cd w = -y;
    const cd zeta = 2.0 / 3.0 * w * std::sqrt(w);
    const cd inv = 1.0 / zeta;
    const cd quarter = std::pow(w, 0.25);
    const cd cs = std::cos(zeta - pi / 4.0);
    const cd sn = std::sin(zeta - pi / 4.0);
    const cd P = asymptotic_sum(c.u, inv, 0, 2);
    const cd Q = asymptotic_sum(c.u, inv, 1, 2);
    const cd R = asymptotic_sum(c.v, inv, 0, 2);
    const cd S = asymptotic_sum(c.v, inv, 1, 2);
    return {(cs * P + sn * Q) / (sqrt_pi * quarter), quarter / sqrt_pi * (sn * R - cs * S)};
}

// Taylor series of the Airy solution with value/slope (a0, a1) at y0, evaluated at y0 + h.
AiryValue taylor_from(cd y0, const AiryValue& at, cd h) {
    const cld c(y0.real(), y0.imag()), hh(h.real(), h.imag());
    cld prev2 = cld(at.ai.real(), at.ai.imag());       // a_{n-2}
    cld prev1 = cld(at.ai_prime.real(), at.ai_prime.imag()); // a_{n-1}
    cld value = prev2 + prev1 * hh, slope = prev1;
    cld hp = hh;  // h^{n-1}
    cld before = 0.0L;  // a_{n-3}
    for (int n = 2; n < 400; ++n) {
        const cld a = (c * prev2 + before) / static_cast<long double>(n * (n - 1));
        const cld dterm = static_cast<long double>(n) * a * hp;
        hp *= hh;
        const cld term = a * hp;
        value += term;
        slope += dterm;
        before = prev2;
        prev2 = prev1;
        prev1 = a;
        if (n > 8 && std::abs(term) + std::abs(dterm) < 1e-21L * (std::abs(value) + std::abs(slope))) break;
    }
    return {cd(double(value.real()), double(value.imag())), cd(double(slope.real()), double(slope.imag()))};
}

AiryValue evaluate(cd y) {
    const double r = std::abs(y);
    if (r >= kRayRadius) return asymptotic(y);
    if (std::abs(std::arg(y)) < pi / 3.0 && r >= kDecayRadius) {
        const cd y0 = y * (kRayRadius / r);
        return taylor_from(y0, asymptotic(y0), y - y0);
    }
    if (r >= kOuterRadius) return asymptotic(y);
    return maclaurin(y);
}

} // namespace

AiryValue airy(std::complex<double> y) {
    if (!std::isfinite(y.real()) || !std::isfinite(y.imag()))
        throw ValidationError("y", "Airy argument must be finite");
    if (std::abs(y.imag()) > kAiryImagLimit)
        throw ValidationError("y", "|Im y| exceeds the supported strip");
    return evaluate(y);
}

double airy_real(double s) { return airy(cd(s, 0.0)).ai.real(); }
double airy_real_prime(double s) { return airy(cd(s, 0.0)).ai_prime.real(); }
std::complex<double> airy_complex(std::complex<double> y) { return airy(y).ai; }
std::complex<double> airy_complex_prime(std::complex<double> y) { return airy(y).ai_prime; }

namespace {

double newton(double x, bool on_derivative) {
    for (int it = 0; it < 50; ++it) {
        const auto v = airy(cd(x, 0.0));
        // Zeros of Ai use Ai'; zeros of Ai' use Ai'' = x Ai.
        const double f = on_derivative ? v.ai_prime.real() : v.ai.real();
        const double df = on_derivative ? x * v.ai.real() : v.ai_prime.real();
        const double step = f / df;
        x -= step;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

} // namespace

double airy_zero(int k) {
    if (k < 1) throw ValidationError("k", "zero index starts at 1");
    const double t = 3.0 * pi / 8.0 * (4.0 * k - 1.0);
    const double guess = -std::pow(t, 2.0 / 3.0) * (1.0 + 5.0 / 48.0 / (t * t));
    return newton(guess, false);
}

double airy_prime_zero(int k) {
    if (k < 1) throw ValidationError("k", "zero index starts at 1");
    const double t = 3.0 * pi / 8.0 * (4.0 * k - 3.0);
    const double guess = -std::pow(t, 2.0 / 3.0) * (1.0 - 7.0 / 48.0 / (t * t));
    return newton(guess, true);
}

} // namespace bohmflow
