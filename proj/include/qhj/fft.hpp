#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qhj::fft {

using cd = std::complex<double>;

bool is_power_of_two(std::size_t n);

// In-place radix-2 transform, power-of-two length only.
// Forward uses exp(-i 2pi jk/n) and is unscaled; inverse applies the 1/n factor.
void forward(std::vector<cd>& a);
void inverse(std::vector<cd>& a);

// Row-major n x n transforms, applied axis by axis.
void forward_2d(std::vector<cd>& a, std::size_t n);
void inverse_2d(std::vector<cd>& a, std::size_t n);

} // namespace qhj::fft
