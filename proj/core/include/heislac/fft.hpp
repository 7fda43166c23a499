#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace heislac {

/// In-place unnormalized DFT: X_k = sum_n x_n exp(sign * 2 pi i k n / N).
/// sign = -1 is the forward transform. Backed by FFTW with cached plans.
void dft_inplace(std::span<std::complex<double>> data, int sign);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

/// Frequency (cycles per unit length) of DFT bin k on N points with spacing h.
inline double dft_frequency(std::size_t k, std::size_t n, double h) {
  const auto kk = static_cast<double>(k);
  const auto nn = static_cast<double>(n);
  return (k <= n / 2 ? kk : kk - nn) / (nn * h);
}

}  // namespace heislac
