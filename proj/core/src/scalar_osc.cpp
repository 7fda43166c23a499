#include "heislac/scalar_osc.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "heislac/numerics.hpp"

namespace heislac {

namespace {

constexpr unsigned kOrder = 61;
using GK = boost::math::quadrature::gauss_kronrod<double, kOrder>;
using GL = boost::math::quadrature::gauss<double, (kOrder - 1) / 2>;
// Cycles of the phase per piece; Gauss-Kronrod 61 is far below 1e-15 here.
constexpr double kCyclesPerPiece = 3.0;

struct Integrand {
  std::array<double, 4> eta;
  std::complex<double> operator()(double t) const {
    const double c = std::cos(t), s = std::sin(t);
    return unit_phase(eta[0] * c + eta[1] * s + eta[2] * (2.0 * c * c - 1.0) + eta[3] * (2.0 * s * c));
  }
};

struct Piece {
  std::complex<double> value;
  double error;
};

// Kronrod abscissae are stored nonnegative. With an even Gauss order the
// Gauss nodes sit at odd positions (and the centre is Kronrod only).
Piece gauss_kronrod(const Integrand& f, double a, double b) {
  const auto& xk = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = GL::weights();
  constexpr bool gauss_centre = ((kOrder - 1) / 2) % 2 == 1;
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const std::complex<double> f0 = f(c);
  std::complex<double> k = f0 * wk[0];
  std::complex<double> g = gauss_centre ? f0 * wg[0] : std::complex<double>{};
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const std::complex<double> v = f(c - h * xk[i]) + f(c + h * xk[i]);
    k += v * wk[i];
    if ((i % 2 == 0) == gauss_centre) g += v * wg[i / 2];
  }
  return {k * h, std::abs(k - g) * h};
}

std::complex<double> adaptive(const Integrand& f, double a, double b, double tol, int depth) {
  const Piece p = gauss_kronrod(f, a, b);
  // |f| = 1, so differences below a few ulps of the piece length are rounding
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (b - a);
  if (p.error <= std::max(tol, floor) || depth >= 30) return p.value;
  const double m = 0.5 * (a + b);
  return adaptive(f, a, m, 0.5 * tol, depth + 1) + adaptive(f, m, b, 0.5 * tol, depth + 1);
}

}  // namespace

std::complex<double> scalar_osc_integral(const std::array<double, 4>& eta, double abs_tol) {
  constexpr double a = std::numbers::pi / 4.0, b = 3.0 * std::numbers::pi / 4.0;
  const Integrand f{eta};
  // bound on |d phase / dt| in cycles per radian
  const double rate = std::abs(eta[0]) + std::abs(eta[1]) + 2.0 * std::abs(eta[2]) + 2.0 * std::abs(eta[3]);
  const auto n = static_cast<std::size_t>(std::ceil(rate * (b - a) / kCyclesPerPiece)) + 1;
  const double h = (b - a) / static_cast<double>(n);
  std::vector<std::complex<double>> parts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = a + h * static_cast<double>(i);
    const double hi = i + 1 == n ? b : lo + h;
    parts[i] = adaptive(f, lo, hi, abs_tol / static_cast<double>(n), 0);
  }
  return pairwise_sum(parts);
}

std::array<double, 4> measure_frequency(double b, double d, double e, int k1, int k2,
                                        const std::array<double, 3>& xi) {
  return {std::ldexp(xi[0], k1), std::ldexp(xi[1], k2),
          (std::ldexp(b, 2 * k1) - std::ldexp(d, 2 * k2)) * xi[2], std::ldexp(e, k1 + k2) * xi[2]};
}

std::complex<double> measure_fourier(double b, double d, double e, int k1, int k2, const std::array<double, 3>& xi,
                                     double abs_tol) {
  const double shift = (std::ldexp(b, 2 * k1) + std::ldexp(d, 2 * k2)) * xi[2];
  return unit_phase(-shift) * scalar_osc_integral(measure_frequency(b, d, e, k1, k2, xi), abs_tol);
}

}  // namespace heislac
