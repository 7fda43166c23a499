#include "heislac/van_der_corput.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "heislac/numerics.hpp"

namespace heislac {

double vdc_constant(int k, int sign_changes) {
  if (k < 1) throw std::invalid_argument("vdc: k must be >= 1");
  if (sign_changes < 0) throw std::invalid_argument("vdc: sign change count must be >= 0");
  const double c = 5.0 * std::ldexp(1.0, k);
  return k == 1 ? c * (sign_changes + 1) : c;
}

namespace {

// k-th forward difference divided by h^k, centred on the midpoint of its stencil.
std::vector<double> derivative(const std::vector<double>& f, double h, int k) {
  std::vector<double> d = f;
  for (int j = 0; j < k; ++j) {
    for (std::size_t i = 0; i + 1 < d.size(); ++i) d[i] = (d[i + 1] - d[i]) / h;
    d.pop_back();
  }
  return d;
}

}  // namespace

VdcResult vdc_check(const VdcInput& in) {
  const std::size_t n = in.x.size();
  if (n < 3 || in.phase.size() != n || in.amplitude.size() != n)
    throw std::invalid_argument("vdc: need matching samples, at least 3");
  if (!(in.lambda > 0.0)) throw std::invalid_argument("vdc: lambda must be positive");
  const double h = (in.x.back() - in.x.front()) / static_cast<double>(n - 1);
  if (!(h > 0.0)) throw std::invalid_argument("vdc: x must increase");
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(in.x[i] - in.x[i - 1] - h) > 1e-9 * h) throw std::invalid_argument("vdc: x must be uniform");
  if (static_cast<std::size_t>(in.k) + 1 > n) throw std::invalid_argument("vdc: too few samples for k");
  const double c = vdc_constant(in.k, in.sign_changes.value_or(0));

  for (std::size_t i = 1; i < n; ++i)
    if (in.lambda * std::abs(in.phase[i] - in.phase[i - 1]) > std::numbers::pi / 4.0) {
      std::ostringstream os;
      os << "vdc: lambda * phase moves more than pi/4 between samples near x = " << in.x[i];
      throw std::invalid_argument(os.str());
    }
  const auto dk = derivative(in.phase, h, in.k);
  for (std::size_t i = 0; i < dk.size(); ++i)
    if (std::abs(dk[i]) < 1.0 - 1e-6) {
      std::ostringstream os;
      os << "vdc: |phase^(" << in.k << ")| = " << std::abs(dk[i]) << " < 1 near x = " << in.x[i];
      throw std::invalid_argument(os.str());
    }
  if (in.k == 1) {
    if (!in.sign_changes) throw std::invalid_argument("vdc: k = 1 needs the sign-change count of phase''");
    const auto d2 = derivative(in.phase, h, 2);
    // ignore second differences at rounding level: relative to their own size,
    // and to the noise eps |phase| / h^2 of differencing the samples
    double scale = 0.0, amp = 0.0;
    for (double v : d2) scale = std::max(scale, std::abs(v));
    for (double v : in.phase) amp = std::max(amp, std::abs(v));
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * amp / (h * h);
    const double floor = std::max(1e-9 * std::max(scale, 1.0), noise);
    int changes = 0, last = 0;
    for (double v : d2) {
      const int sgn = v > floor ? 1 : (v < -floor ? -1 : 0);
      if (sgn != 0 && last != 0 && sgn != last) ++changes;
      if (sgn != 0) last = sgn;
    }
    if (changes > *in.sign_changes) {
      std::ostringstream os;
      os << "vdc: phase'' changes sign " << changes << " times, more than the declared " << *in.sign_changes;
      throw std::invalid_argument(os.str());
    }
  }

  std::vector<std::complex<double>> terms(n);
  std::vector<double> var(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 * h : h;
    terms[i] = std::polar(w * in.amplitude[i], in.lambda * in.phase[i]);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) var[i] = std::abs(in.amplitude[i + 1] - in.amplitude[i]);
  VdcResult r;
  r.constant = c;
  r.lhs = std::abs(pairwise_sum(terms));
  r.rhs = c * std::pow(in.lambda, -1.0 / in.k) * (std::abs(in.amplitude.back()) + pairwise_sum(var));
  return r;
}

}  // namespace heislac
