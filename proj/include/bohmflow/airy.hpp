#pragma once

#include <complex>

namespace bohmflow {

/// Half-width of the strip |Im y| <= kAiryImagLimit where the complex evaluator is supported.
inline constexpr double kAiryImagLimit = 50.0;

struct AiryValue {
    std::complex<double> ai;
    std::complex<double> ai_prime;
};

/// Ai and Ai' at complex y. Power series (extended precision) near the origin,
/// asymptotic expansions with the proper Stokes-sector form further out.
/// Throws ValidationError outside |Im y| <= kAiryImagLimit.
AiryValue airy(std::complex<double> y);

double airy_real(double s);
double airy_real_prime(double s);
std::complex<double> airy_complex(std::complex<double> y);
std::complex<double> airy_complex_prime(std::complex<double> y);

/// k-th zero a_k of Ai (k >= 1, a_1 ~ -2.338).
double airy_zero(int k);
/// k-th zero a'_k of Ai', i.e. the k-th maximum of |Ai| (a'_1 ~ -1.019).
double airy_prime_zero(int k);

} // namespace bohmflow
