#pragma once

#include <complex>
#include <span>
#include <vector>

namespace bohmflow::detail {

/// Unnormalized forward (e^{-i...}) DFT of length in.size(), natural (uncentered) order.
std::vector<std::complex<double>> fft_forward(std::span<const std::complex<double>> in);
/// Unnormalized backward (e^{+i...}) DFT.
std::vector<std::complex<double>> fft_backward(std::span<const std::complex<double>> in);

} // namespace bohmflow::detail
