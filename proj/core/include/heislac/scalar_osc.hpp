#pragma once

#include <array>
#include <complex>

namespace heislac {

/// int_{pi/4}^{3pi/4} exp(-2 pi i eta . (cos t, sin t, cos 2t, sin 2t)) dt,
/// adaptive Gauss-Kronrod with total absolute error <= abs_tol.
std::complex<double> scalar_osc_integral(const std::array<double, 4>& eta, double abs_tol = 1e-10);

/// Frequency vector of the reduced measure at (k1, k2):
/// (2^k1 xi1, 2^k2 xi2, (b 4^k1 - d 4^k2) xi3, e 2^{k1+k2} xi3).
std::array<double, 4> measure_frequency(double b, double d, double e, int k1, int k2,
                                        const std::array<double, 3>& xi);

/// Euclidean Fourier transform of the reduced measure:
/// exp(2 pi i (b 4^k1 + d 4^k2) xi3) * scalar_osc_integral(measure_frequency(...)).
std::complex<double> measure_fourier(double b, double d, double e, int k1, int k2, const std::array<double, 3>& xi,
                                     double abs_tol = 1e-10);

}  // namespace heislac
