#include "heislac/osc_operator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "heislac/cutoffs.hpp"
#include "heislac/errors.hpp"
#include "heislac/fft.hpp"
#include "heislac/numerics.hpp"

namespace heislac {

void OscKernelSpec::validate() const {
  if (s < 0) throw std::invalid_argument("osc spec: s must be >= 0");
  if (!std::isfinite(big_lambda)) throw std::invalid_argument("osc spec: lambda 2^{k1+k2} must be finite");
  if (ell1 && *ell1 < 0) throw std::invalid_argument("osc spec: ell1 must be >= 0");
  if (ell2 && *ell2 < 0) throw std::invalid_argument("osc spec: ell2 must be >= 0");
  if (!(grid.points_per_period > 0.0) || !(grid.points_per_bump > 0.0))
    throw std::invalid_argument("osc spec: points per period/bump must be positive");
  if (!(grid.y_hi > grid.y_lo)) throw std::invalid_argument("osc spec: empty y-window");
  if (grid.max_points < 2) throw std::invalid_argument("osc spec: max_points must be >= 2");
}

namespace {

struct Interval {
  double lo, hi;
};

double half_width(const OscKernelSpec& spec) { return kMaxPhaseOffset * std::ldexp(1.0, -spec.s); }

// Where the y-cutoffs can be nonzero.
std::vector<Interval> y_support(const OscKernelSpec& spec) {
  double r_lo = 0.0, r_hi = std::numeric_limits<double>::infinity();
  bool radial = false;
  if (spec.m) {
    radial = true;
    r_lo = std::max(r_lo, std::ldexp(1.0, *spec.m - 1));
    r_hi = std::min(r_hi, std::ldexp(1.0, *spec.m + 1));
  }
  if (spec.ell2) {
    radial = true;
    const double c = std::abs(spec.big_lambda) * std::ldexp(1.0, -*spec.ell2);
    if (c == 0.0) return {};
    r_lo = std::max(r_lo, 0.5 / c);
    r_hi = std::min(r_hi, 2.0 / c);
  }
  if (!radial) return {{spec.grid.y_lo, spec.grid.y_hi}};
  if (!(r_hi > r_lo)) return {};
  return {{-r_hi, -r_lo}, {r_lo, r_hi}};
}

double y_weight(const OscKernelSpec& spec, double y) {
  double w = 1.0;
  if (spec.m) w *= phi(std::ldexp(y, -*spec.m));
  if (spec.ell2) w *= phi(spec.big_lambda * std::ldexp(y, -*spec.ell2));
  return w;
}

// sup over the kernel support of |d/dx (Phi - x - y)| and of the y-derivative
// (reduced, or full when P^1 acts on y).
std::pair<double, double> derivative_bounds(const OscKernelSpec& spec, const std::vector<Interval>& ys) {
  const double w = half_width(spec);
  double bx = 0.0, by = 0.0;
  constexpr int kSamples = 65;
  for (const auto& iv : ys)
    for (int a = 0; a < kSamples; ++a) {
      const double y = iv.lo + (iv.hi - iv.lo) * a / (kSamples - 1);
      for (int b = 0; b < kSamples; ++b) {
        const double u = -w + 2.0 * w * b / (kSamples - 1);
        const double x = y + u;
        bx = std::max(bx, std::abs(phase_dx(spec.phase, x, y) - 1.0));
        const double dy = phase_dy(spec.phase, x, y);
        by = std::max(by, std::abs(spec.ell1 ? dy : dy - 1.0));
      }
    }
  return {bx, by};
}

std::size_t cells_for(double length, double h) {
  return static_cast<std::size_t>(std::max(2.0, std::ceil(length / h - 1e-9)));
}

std::vector<double> centers(double lo, double hi, std::size_t n) {
  std::vector<double> c(n);
  const double h = (hi - lo) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = lo + (static_cast<double>(i) + 0.5) * h;
  return c;
}

std::size_t choose_size(const char* axis, double length, double h, std::optional<std::size_t> given,
                        std::size_t cap) {
  const std::size_t need = cells_for(length, h);
  if (given) {
    if (*given < need) {
      std::ostringstream os;
      os << "osc operator: " << axis << "-grid of " << *given << " points under-resolves the kernel";
      throw ResolutionError(os.str(), need);
    }
    return *given;
  }
  if (need > cap) {
    std::ostringstream os;
    os << "osc operator: " << axis << "-grid exceeds the cap of " << cap << " points";
    throw ResolutionError(os.str(), need);
  }
  return need;
}

OscBlock assemble(const OscKernelSpec& spec, const Interval& yr, const OscResolution& res) {
  const double w = half_width(spec);
  const Interval xr{yr.lo - w, yr.hi + w};
  const std::size_t ny = choose_size("y", yr.hi - yr.lo, res.hy, spec.grid.ny, spec.grid.max_points);
  const std::size_t nx = choose_size("x", xr.hi - xr.lo, res.hx, spec.grid.nx, spec.grid.max_points);
  OscBlock blk;
  blk.x = centers(xr.lo, xr.hi, nx);
  blk.y = centers(yr.lo, yr.hi, ny);
  blk.hx = (xr.hi - xr.lo) / static_cast<double>(nx);
  blk.hy = (yr.hi - yr.lo) / static_cast<double>(ny);
  const double scale_s = std::ldexp(1.0, spec.s);

  std::vector<double> wy(ny);
  for (std::size_t j = 0; j < ny; ++j) wy[j] = y_weight(spec, blk.y[j]) * blk.hy;

  blk.matrix = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(ny));
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      if (wy[j] == 0.0) continue;
      const double u = blk.x[i] - blk.y[j];
      if (std::abs(u) >= w) continue;
      const double amp = beta(scale_s * u);
      if (amp == 0.0) continue;
      blk.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          unit_phase(spec.big_lambda * phase_eval(spec.phase, blk.x[i], blk.y[j])) * (amp * wy[j]);
    }

  if (spec.ell1) {
    // Right composition with P^1 on a zero-padded periodic window.
    const std::size_t np = next_pow2(2 * ny);
    const std::size_t off = (np - ny) / 2;
    std::vector<double> mult(np);
    for (std::size_t k = 0; k < np; ++k) mult[k] = phi(std::ldexp(dft_frequency(k, np, blk.hy), -*spec.ell1));
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(np));
    std::vector<std::complex<double>> row(np);
    for (std::size_t i = 0; i < nx; ++i) {
      std::fill(row.begin(), row.end(), std::complex<double>{});
      for (std::size_t j = 0; j < ny; ++j) row[off + j] = blk.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      dft_inplace(row, -1);
      for (std::size_t k = 0; k < np; ++k) row[k] *= mult[k] / static_cast<double>(np);
      dft_inplace(row, +1);
      for (std::size_t k = 0; k < np; ++k) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k];
    }
    blk.matrix = std::move(out);
    const double y0 = blk.y.front() - static_cast<double>(off) * blk.hy;
    blk.y.resize(np);
    for (std::size_t k = 0; k < np; ++k) blk.y[k] = y0 + static_cast<double>(k) * blk.hy;
  }
  return blk;
}

}  // namespace

OscResolution required_steps(const OscKernelSpec& spec) {
  spec.validate();
  const auto ys = y_support(spec);
  const double bump = std::ldexp(1.0, -spec.s) / spec.grid.points_per_bump;
  OscResolution r{bump, bump};
  if (spec.m) r.hy = std::min(r.hy, std::ldexp(1.0, *spec.m - 1) / spec.grid.points_per_bump);
  if (spec.ell2 && spec.big_lambda != 0.0) {
    const double c = std::abs(spec.big_lambda) * std::ldexp(1.0, -*spec.ell2);
    r.hy = std::min(r.hy, 0.5 / c / spec.grid.points_per_bump);
  }
  if (!spec.m && !spec.ell2) r.hy = std::min(r.hy, (spec.grid.y_hi - spec.grid.y_lo) / 32.0);
  if (spec.ell1) r.hy = std::min(r.hy, std::ldexp(1.0, -*spec.ell1 - 3));
  if (!ys.empty() && spec.big_lambda != 0.0) {
    const auto [bx, by] = derivative_bounds(spec, ys);
    const double lam = std::abs(spec.big_lambda);
    if (bx > 0.0) r.hx = std::min(r.hx, 1.0 / (spec.grid.points_per_period * lam * bx));
    if (by > 0.0) r.hy = std::min(r.hy, 1.0 / (spec.grid.points_per_period * lam * by));
  }
  return r;
}

std::vector<OscBlock> build_osc_blocks(const OscKernelSpec& spec) {
  const OscResolution res = required_steps(spec);
  const auto ys = y_support(spec);
  if (ys.empty()) return {};
  const double w = half_width(spec);
  std::vector<Interval> groups;
  for (const auto& iv : ys) {
    // P^1 is nonlocal in y, so it keeps everything in one block.
    if (!groups.empty() && (spec.ell1 || iv.lo - w < groups.back().hi + w))
      groups.back().hi = std::max(groups.back().hi, iv.hi);
    else
      groups.push_back(iv);
  }
  std::vector<OscBlock> blocks;
  for (const auto& g : groups) blocks.push_back(assemble(spec, g, res));
  return blocks;
}

OscBlock build_osc_operator(const OscKernelSpec& spec) {
  const OscResolution res = required_steps(spec);
  const auto ys = y_support(spec);
  if (ys.empty()) {
    OscBlock zero;
    zero.hx = zero.hy = 1.0;
    zero.matrix = Eigen::MatrixXcd::Zero(1, 1);
    zero.x = {0.0};
    zero.y = {0.0};
    return zero;
  }
  return assemble(spec, {ys.front().lo, ys.back().hi}, res);
}

}  // namespace heislac
