#pragma once

#include <complex>

namespace hvci::detail {

/// Forward real-to-complex transform of an m^3 array, unnormalized. Input is preserved.
void fft_forward(int m, const double* in, std::complex<double>* out);

/// Inverse complex-to-real transform of an m^3 half spectrum. The input is overwritten.
void fft_inverse(int m, std::complex<double>* in, double* out);

}  // namespace hvci::detail
