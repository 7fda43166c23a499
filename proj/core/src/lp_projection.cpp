#include "heislac/lp_projection.hpp"

#include <cmath>
#include <stdexcept>

#include "heislac/cutoffs.hpp"
#include "heislac/fft.hpp"
#include "heislac/numerics.hpp"

namespace heislac {

ComplexVec fourier_multiplier_1d(std::span<const std::complex<double>> values, double h,
                                 const std::function<double(double)>& m, std::size_t pad_factor) {
  if (!(h > 0.0)) throw std::invalid_argument("fourier_multiplier_1d: spacing must be positive");
  if (pad_factor < 1) throw std::invalid_argument("fourier_multiplier_1d: pad_factor must be >= 1");
  const std::size_t n = values.size();
  if (n == 0) return {};
  const std::size_t big = next_pow2(pad_factor * n);
  const std::size_t off = (big - n) / 2;
  ComplexVec buf(big);
  std::copy(values.begin(), values.end(), buf.begin() + static_cast<std::ptrdiff_t>(off));
  dft_inplace(buf, -1);
  const double inv = 1.0 / static_cast<double>(big);
  for (std::size_t k = 0; k < big; ++k) buf[k] *= m(dft_frequency(k, big, h)) * inv;
  dft_inplace(buf, +1);
  return ComplexVec(buf.begin() + static_cast<std::ptrdiff_t>(off),
                    buf.begin() + static_cast<std::ptrdiff_t>(off + n));
}

ComplexVec freq_multiplier_1d(std::span<const std::complex<double>> values, double h, int ell,
                              std::size_t pad_factor) {
  return fourier_multiplier_1d(values, h, [ell](double xi) { return phi(std::ldexp(xi, -ell)); }, pad_factor);
}

ComplexVec freq_multiplier_chain_1d(std::span<const std::complex<double>> values, double h,
                                    std::span<const int> ells, std::size_t pad_factor) {
  const std::vector<int> ls(ells.begin(), ells.end());
  return fourier_multiplier_1d(
      values, h,
      [ls](double xi) {
        double m = 1.0;
        for (int l : ls) m *= phi(std::ldexp(xi, -l));
        return m;
      },
      pad_factor);
}

ComplexVec space_multiplier_1d(std::span<const std::complex<double>> values, std::span<const double> y,
                               double coefficient) {
  if (values.size() != y.size()) throw std::invalid_argument("space_multiplier_1d: size mismatch");
  ComplexVec out(values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values[i] * phi(coefficient * y[i]);
  return out;
}

namespace {

// D_a F(x) = F(x1, x2, x3 + a x1 x2) is the shear by sym = [[0, a], [a, 0]].
const Matrix2 kTwistShear = Matrix2::symmetric(0.0, 2.0, 0.0);

void check_axis(const GridFunction3& f, int nu) {
  if (nu != 1 && nu != 2) throw std::invalid_argument("lp_project: axis must be 1 or 2");
  if (!f.axis(nu - 1).is_uniform()) throw std::invalid_argument("lp_project: projection axis must be uniform");
}

GridFunction3 multiplier_along(const GridFunction3& f, int axis, const std::function<double(double)>& m) {
  const auto [n0, n1, n2] = f.resolution();
  const std::size_t na = axis == 0 ? n0 : n1;
  const std::size_t nb = axis == 0 ? n1 : n0;
  const double h = f.axis(axis).width(0);
  GridFunction3 g(f.axes());
  ComplexVec line(na);
  for (std::size_t b = 0; b < nb; ++b)
    for (std::size_t k = 0; k < n2; ++k) {
      for (std::size_t a = 0; a < na; ++a) line[a] = axis == 0 ? f.at(a, b, k) : f.at(b, a, k);
      const ComplexVec out = fourier_multiplier_1d(line, h, m);
      for (std::size_t a = 0; a < na; ++a) (axis == 0 ? g.at(a, b, k) : g.at(b, a, k)) = out[a].real();
    }
  return g;
}

}  // namespace

GridFunction3 twisted_multiplier(const GridFunction3& f, int nu, const std::function<double(double)>& m,
                                 Diagnostics* diag) {
  check_axis(f, nu);
  if (nu == 1) {
    const GridFunction3 sheared = shear(f, kTwistShear, +1, diag);
    return shear(multiplier_along(sheared, 0, m), kTwistShear, -1, diag);
  }
  const GridFunction3 sheared = shear(f, kTwistShear, -1, diag);
  return shear(multiplier_along(sheared, 1, m), kTwistShear, +1, diag);
}

std::vector<double> lp_kernel_samples(int j, double h, std::size_t half_width) {
  // kappa(y) = 2^{-j} * 2 int_{1/2}^{2} phi(t) cos(2 pi t y 2^{-j}) dt; the
  // integrand is flat at both ends, so the trapezoid rule converges fast.
  constexpr int kNodes = 4096;
  const double dt = 1.5 / kNodes;
  std::vector<double> tv(kNodes + 1), pv(kNodes + 1);
  for (int i = 0; i <= kNodes; ++i) {
    tv[i] = 0.5 + dt * i;
    pv[i] = phi(tv[i]);
  }
  const double scale = std::ldexp(1.0, -j);
  std::vector<double> out(2 * half_width + 1);
  std::vector<double> terms(kNodes + 1);
  for (std::size_t n = 0; n <= 2 * half_width; ++n) {
    const double y = (static_cast<double>(n) - static_cast<double>(half_width)) * h;
    for (int i = 0; i <= kNodes; ++i) terms[i] = pv[i] * std::cos(kTwoPi * tv[i] * y * scale);
    out[n] = 2.0 * scale * dt * pairwise_sum(terms);
  }
  return out;
}

namespace {

GridFunction3 lp_project_direct(const GridFunction3& f, int j, int nu) {
  const auto res = f.resolution();
  const int a = nu - 1;
  const std::size_t na = res[a];
  const double h = f.axis(a).width(0);
  const auto kappa = lp_kernel_samples(j, h, na);
  const Axis& ax3 = f.axis(2);
  GridFunction3 g(f.axes());
  std::vector<double> terms;
  for (std::size_t i0 = 0; i0 < res[0]; ++i0)
    for (std::size_t i1 = 0; i1 < res[1]; ++i1) {
      const double x1 = f.axis(0).center(i0);
      const double x2 = f.axis(1).center(i1);
      const std::size_t ia = a == 0 ? i0 : i1;
      for (std::size_t k = 0; k < res[2]; ++k) {
        const double x3 = ax3.center(k);
        terms.clear();
        for (std::size_t src = 0; src < na; ++src) {
          const auto n = static_cast<std::ptrdiff_t>(ia) - static_cast<std::ptrdiff_t>(src);
          const double y = static_cast<double>(n) * h;
          // nu=1: f(x1 - y, x2, x3 - 2 x2 y); nu=2: f(x1, x2 - y, x3 + 2 x1 y)
          const double t = a == 0 ? x3 - 2.0 * x2 * y : x3 + 2.0 * x1 * y;
          if (t < ax3.lo() || t > ax3.hi()) continue;
          const auto [kk, w] = ax3.locate(t);
          const std::size_t s0 = a == 0 ? src : i0;
          const std::size_t s1 = a == 0 ? i1 : src;
          const double v = w == 0.0 ? f.at(s0, s1, kk) : (1.0 - w) * f.at(s0, s1, kk) + w * f.at(s0, s1, kk + 1);
          terms.push_back(v * kappa[static_cast<std::size_t>(n + static_cast<std::ptrdiff_t>(na))] * h);
        }
        g.at(i0, i1, k) = pairwise_sum(terms);
      }
    }
  return g;
}

}  // namespace

GridFunction3 lp_project(const GridFunction3& f, int j, int nu, LpRoute route, Diagnostics* diag) {
  check_axis(f, nu);
  if (route == LpRoute::direct_quadrature) return lp_project_direct(f, j, nu);
  return twisted_multiplier(f, nu, [j](double xi) { return phi(std::ldexp(xi, j)); }, diag);
}

LpRemainders lp_remainders(const GridFunction3& f, int L, int nu, Diagnostics* diag) {
  if (L < 0) throw std::invalid_argument("lp_remainders: L must be >= 0");
  return {twisted_multiplier(f, nu, [L](double xi) { return psi(std::ldexp(xi, L + 1)); }, diag),
          twisted_multiplier(f, nu, [L](double xi) { return psi_c(std::ldexp(xi, -L)); }, diag)};
}

}  // namespace heislac
