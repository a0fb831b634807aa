#pragma once

#include <complex>
#include <vector>

namespace sdfsim {

// Forward complex DFT (FFTW backend, plans cached per size; thread-safe).
std::vector<std::complex<double>> fft_forward(const std::vector<std::complex<double>>& in);

}  // namespace sdfsim
