#include "heislac/phase.hpp"

#include <cmath>
#include <stdexcept>

namespace heislac {

namespace {

struct Coeffs {
  double e, bb, dd;  // bb = b 2^{k1-k2}, dd = d 2^{k2-k1}
};

Coeffs coeffs(const PhaseSpec& p) {
  if (p.kind == PhaseSpec::Kind::circle) return {0.0, 0.0, 0.0};
  return {p.e, p.b * std::ldexp(1.0, p.k1 - p.k2), p.d * std::ldexp(1.0, p.k2 - p.k1)};
}

double checked_u(double x, double y) {
  const double u = x - y;
  if (!(std::abs(u) <= kMaxPhaseOffset)) throw std::invalid_argument("phase: |x - y| must be <= 3/4");
  return u;
}

}  // namespace

double phase_eval(const PhaseSpec& p, double x, double y) {
  const double u = checked_u(x, y);
  const Coeffs c = coeffs(p);
  return (c.e * u + (x + y)) * std::sqrt(1.0 - u * u) + c.bb * u * u + c.dd * (1.0 - u * u);
}

double phase_dx(const PhaseSpec& p, double x, double y) {
  const double u = checked_u(x, y);
  const Coeffs c = coeffs(p);
  const double q = std::sqrt(1.0 - u * u);
  return (c.e + 1.0) * q - (c.e * u + x + y) * u / q + 2.0 * (c.bb - c.dd) * u;
}

double phase_dy(const PhaseSpec& p, double x, double y) {
  const double u = checked_u(x, y);
  const Coeffs c = coeffs(p);
  const double q = std::sqrt(1.0 - u * u);
  return (1.0 - c.e) * q + (c.e * u + x + y) * u / q - 2.0 * (c.bb - c.dd) * u;
}

double phase_hessian(const PhaseSpec& p, double x, double y) {
  const double u = checked_u(x, y);
  const Coeffs c = coeffs(p);
  const double w = 1.0 - u * u;
  return ((x + y) + c.e * (3.0 * u - 2.0 * u * u * u)) / (w * std::sqrt(w)) - 2.0 * c.bb + 2.0 * c.dd;
}

double phase_hessian_dy2(const PhaseSpec& p, double x, double y) {
  if (p.kind != PhaseSpec::Kind::general) throw std::invalid_argument("phase_hessian_dy2: general phase only");
  const double u = checked_u(x, y);
  const double e = p.e;
  const double w = 1.0 - u * u;
  const double sw = std::sqrt(w);
  // Mixed derivative = N(u, S) D(u), N = S + e(3u - 2u^3), D = w^{-3/2}; d/dy = d/dS - d/du.
  const double n = (x + y) + e * (3.0 * u - 2.0 * u * u * u);
  const double nu = e * (3.0 - 6.0 * u * u);
  const double nuu = -12.0 * e * u;
  const double d0 = 1.0 / (w * sw);
  const double d1 = 3.0 * u / (w * w * sw);
  const double d2 = 3.0 / (w * w * sw) + 15.0 * u * u / (w * w * w * sw);
  return -2.0 * d1 + nuu * d0 + 2.0 * nu * d1 + n * d2;
}

}  // namespace heislac
