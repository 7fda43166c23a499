#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "heislac/grid.hpp"

namespace heislac {

using ComplexVec = std::vector<std::complex<double>>;

/// Fourier multiplier m(xi) on uniformly spaced samples (spacing h), applied on
/// a zero-padded power-of-two periodic window of at least `pad_factor` times
/// the input length. xi is in cycles per unit length.
ComplexVec fourier_multiplier_1d(std::span<const std::complex<double>> values, double h,
                                 const std::function<double(double)>& m, std::size_t pad_factor = 2);

/// P^1_ell: multiplication by phi(2^{-ell} xi) on the Fourier side.
ComplexVec freq_multiplier_1d(std::span<const std::complex<double>> values, double h, int ell,
                              std::size_t pad_factor = 2);

/// P^1_{ell_n} ... P^1_{ell_1} on one padded window: the product of the
/// multipliers is applied in a single transform, so disjoint supports give an
/// exactly zero result.
ComplexVec freq_multiplier_chain_1d(std::span<const std::complex<double>> values, double h,
                                    std::span<const int> ells, std::size_t pad_factor = 2);

/// P^2: pointwise multiplication by phi(coefficient * y).
ComplexVec space_multiplier_1d(std::span<const std::complex<double>> values, std::span<const double> y,
                               double coefficient);

enum class LpRoute { shear_multiplier, direct_quadrature };

/// Twisted convolution of f with the kernel whose Euclidean multiplier along
/// axis nu (1 or 2) is m(xi_nu), and which is a Dirac mass in the other two
/// variables. Route shear_multiplier conjugates the twist into an x3-shear
/// and applies an FFT multiplier along axis nu; axis nu must be uniform.
GridFunction3 twisted_multiplier(const GridFunction3& f, int nu, const std::function<double(double)>& m,
                                 Diagnostics* diag = nullptr);

/// L_j^nu *_J f, i.e. the multiplier phi(2^j xi_nu) along axis nu.
GridFunction3 lp_project(const GridFunction3& f, int j, int nu, LpRoute route = LpRoute::shear_multiplier,
                         Diagnostics* diag = nullptr);

/// Low and high telescoping remainders: f = sum_{j=-L}^{L} lp_project(f, j, nu)
/// + low + high, low = psi(2^{L+1} xi), high = psi_c(2^{-L} xi).
struct LpRemainders {
  GridFunction3 low;
  GridFunction3 high;
};
LpRemainders lp_remainders(const GridFunction3& f, int L, int nu, Diagnostics* diag = nullptr);

/// Sampled 1-D kernel kappa = F^{-1}[phi(2^j .)] at offsets n*h, |n| <= half_width.
std::vector<double> lp_kernel_samples(int j, double h, std::size_t half_width);

}  // namespace heislac
