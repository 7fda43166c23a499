#include "heislac/gft.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "heislac/numerics.hpp"

namespace heislac {

void Grid1D::validate() const {
  if (!(hi > lo) || n < 2) throw std::invalid_argument("grid1d: need lo < hi and n >= 2");
}

namespace {

// F_3 f(p, q, tau) sampled on the first two axes of f.
struct Slice {
  Axis p;
  Axis q;
  Eigen::MatrixXcd data;  // (p index, q index)
};

Slice slice_tau(const GridFunction3& f, double tau) {
  const auto [n0, n1, n2] = f.resolution();
  const Axis& s = f.axis(2);
  Slice out{f.axis(0), f.axis(1), Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n0), static_cast<Eigen::Index>(n1))};
  // The samples only see the band |tau| <= 1/(2 dx3); past it the sum aliases
  // back onto low frequencies, so the transform is taken as zero there.
  if (std::abs(tau) > 0.5 / s.max_width()) return out;
  std::vector<std::complex<double>> e(n2);
  for (std::size_t k = 0; k < n2; ++k) e[k] = unit_phase(tau * s.center(k)) * s.width(k);
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      std::complex<double> acc = 0.0;
      for (std::size_t k = 0; k < n2; ++k) acc += f.at(i, j, k) * e[k];
      out.data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  return out;
}

Eigen::MatrixXcd kernel_from_slice(const Slice& sl, double lambda, const Grid1D& grid) {
  const auto n = static_cast<Eigen::Index>(grid.n);
  const double h = grid.step();
  const auto nq = static_cast<Eigen::Index>(sl.q.size());
  const Eigen::Index nd = 2 * n - 1;

  // Rows of the slice interpolated at p = (a - b) h.
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(nd, nq);
  for (Eigen::Index d = 0; d < nd; ++d) {
    const double p = static_cast<double>(d - (n - 1)) * h;
    if (p < sl.p.lo() || p > sl.p.hi()) continue;
    const auto [i, w] = sl.p.locate(p);
    const auto ii = static_cast<Eigen::Index>(i);
    g.row(d) = sl.data.row(ii);
    if (w > 0.0) g.row(d) = (1.0 - w) * sl.data.row(ii) + w * sl.data.row(ii + 1);
  }
  // exp(-2 pi i omega q_j) dq_j with omega = lambda (x_a + y_b) / 2.
  // Same band limit in q as in slice_tau.
  const double q_nyq = 0.5 / sl.q.max_width();
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(nd, nq);
  for (Eigen::Index sidx = 0; sidx < nd; ++sidx) {
    const double sum = 2.0 * grid.lo + static_cast<double>(sidx + 1) * h;
    const double omega = 0.5 * lambda * sum;
    if (std::abs(omega) > q_nyq) continue;
    for (Eigen::Index j = 0; j < nq; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      e(sidx, j) = unit_phase(omega * sl.q.center(jj)) * sl.q.width(jj);
    }
  }
  Eigen::MatrixXcd k(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      k(a, b) = (g.row(a - b + n - 1).array() * e.row(a + b).array()).sum();
  return k;
}

void check_lambda(double lambda) {
  if (lambda == 0.0 || !std::isfinite(lambda)) throw std::invalid_argument("gft: lambda must be finite and nonzero");
}

void alias_warnings(const GridFunction3& f, double lambda, const Grid1D& grid, Diagnostics* diag) {
  if (!diag) return;
  const double omega_max = std::abs(lambda) * std::max(std::abs(grid.lo), std::abs(grid.hi));
  const double q_nyq = 0.5 / f.axis(1).max_width();
  const double s_nyq = 0.5 / f.axis(2).max_width();
  if (omega_max > q_nyq) {
    std::ostringstream os;
    os << "gft: lambda (x+y)/2 reaches " << omega_max << ", beyond the reliable window " << q_nyq;
    diag->warn(os.str());
  }
  if (std::abs(lambda) / 4.0 > s_nyq) {
    std::ostringstream os;
    os << "gft: lambda/4 = " << std::abs(lambda) / 4.0 << " exceeds the x3 Nyquist frequency " << s_nyq;
    diag->warn(os.str());
  }
}

}  // namespace

GFTOperator gft(const GridFunction3& f, double lambda, const Grid1D& grid, Diagnostics* diag) {
  check_lambda(lambda);
  grid.validate();
  alias_warnings(f, lambda, grid, diag);
  return {lambda, grid, kernel_from_slice(slice_tau(f, lambda / 4.0), lambda, grid)};
}

double hs_norm(const GFTOperator& op) { return op.kernel.norm() * op.grid.step(); }

GFTOperator compose(const GFTOperator& a, const GFTOperator& b) {
  if (a.grid.lo != b.grid.lo || a.grid.hi != b.grid.hi || a.grid.n != b.grid.n)
    throw std::invalid_argument("compose: grids differ");
  return {a.lambda, a.grid, (a.kernel * b.kernel) * a.grid.step()};
}

LambdaQuadrature LambdaQuadrature::log_spaced(double lo, double hi, std::size_t per_octave) {
  if (!(lo > 0.0) || !(hi > lo) || per_octave == 0)
    throw std::invalid_argument("lambda quadrature: need 0 < lo < hi and per_octave >= 1");
  const double octaves = std::log2(hi / lo);
  const auto m = static_cast<std::size_t>(std::ceil(octaves * static_cast<double>(per_octave) - 1e-9));
  const double dlog = std::log(hi / lo) / static_cast<double>(m);
  LambdaQuadrature q;
  for (std::size_t i = 0; i <= m; ++i) {
    const double lam = lo * std::exp(dlog * static_cast<double>(i));
    const double w = lam * dlog * ((i == 0 || i == m) ? 0.5 : 1.0);
    q.nodes.push_back(lam);
    q.weights.push_back(w);
    q.nodes.push_back(-lam);
    q.weights.push_back(w);
  }
  return q;
}

double LambdaQuadrature::cutoff() const {
  double c = std::numeric_limits<double>::infinity();
  for (double l : nodes) c = std::min(c, std::abs(l));
  return c;
}

PlancherelResult plancherel_check(const GridFunction3& f, const LambdaQuadrature& lq, const Grid1D& grid,
                                  Diagnostics* diag) {
  PlancherelResult r;
  const double l2 = lp_norm(f, 2.0);
  r.lhs = l2 * l2;
  if (r.lhs == 0.0) return r;
  std::vector<double> terms;
  for (std::size_t i = 0; i < lq.nodes.size(); ++i) {
    const double lam = lq.nodes[i];
    const double hs = hs_norm(gft(f, lam, grid, nullptr));
    terms.push_back(0.25 * lq.weights[i] * std::abs(lam) * hs * hs);
  }
  r.rhs = pairwise_sum(terms);
  double lam_max = 0.0;
  for (double l : lq.nodes) lam_max = std::max(lam_max, std::abs(l));
  if (lam_max > 0.0) alias_warnings(f, lam_max, grid, diag);

  // |lambda| < eps: integrand tends to (1/4) int int |F_3 f(p, q, 0)|^2 dp dq.
  const Slice s0 = slice_tau(f, 0.0);
  std::vector<double> t0;
  for (Eigen::Index i = 0; i < s0.data.rows(); ++i)
    for (Eigen::Index j = 0; j < s0.data.cols(); ++j)
      t0.push_back(std::norm(s0.data(i, j)) * s0.p.width(static_cast<std::size_t>(i)) *
                   s0.q.width(static_cast<std::size_t>(j)));
  r.near_zero_estimate = 0.5 * lq.cutoff() * pairwise_sum(t0);
  return r;
}

namespace {

Axis sum_axis(const Axis& a, const Axis& b) {
  const double h = a.width(0);
  if (!a.is_uniform() || !b.is_uniform() || std::abs(b.width(0) - h) > 1e-12 * h)
    throw std::invalid_argument("convolution_check: first two axes must be uniform with a common step");
  return Axis::uniform(a.lo() + b.lo() + 0.5 * h, a.hi() + b.hi() - 0.5 * h, a.size() + b.size() - 1);
}

// F_3 (f *_J g)(x, tau) = sum_y F_3 f(x - y, tau) F_3 g(y, tau) exp(-2 pi i tau x^T J y) dy.
Slice convolve_slices(const Slice& f, const Slice& g, double tau) {
  const Matrix2 jm = Matrix2::heisenberg_j();
  Slice out{sum_axis(f.p, g.p), sum_axis(f.q, g.q), {}};
  const auto m0 = static_cast<Eigen::Index>(out.p.size());
  const auto m1 = static_cast<Eigen::Index>(out.q.size());
  out.data = Eigen::MatrixXcd::Zero(m0, m1);
  const double cell = g.p.width(0) * g.q.width(0);
  for (Eigen::Index a = 0; a < m0; ++a)
    for (Eigen::Index b = 0; b < m1; ++b) {
      const double x1 = out.p.center(static_cast<std::size_t>(a));
      const double x2 = out.q.center(static_cast<std::size_t>(b));
      std::complex<double> acc = 0.0;
      for (Eigen::Index j0 = 0; j0 < g.data.rows(); ++j0) {
        const Eigen::Index i0 = a - j0;
        if (i0 < 0 || i0 >= f.data.rows()) continue;
        const double y1 = g.p.center(static_cast<std::size_t>(j0));
        for (Eigen::Index j1 = 0; j1 < g.data.cols(); ++j1) {
          const Eigen::Index i1 = b - j1;
          if (i1 < 0 || i1 >= f.data.cols()) continue;
          const double y2 = g.q.center(static_cast<std::size_t>(j1));
          acc += f.data(i0, i1) * g.data(j0, j1) * unit_phase(tau * jm.bilinear(x1, x2, y1, y2));
        }
      }
      out.data(a, b) = acc * cell;
    }
  return out;
}

}  // namespace

double convolution_check(const GridFunction3& f, const GridFunction3& g, double lambda, const Grid1D& grid,
                         Diagnostics* diag) {
  check_lambda(lambda);
  grid.validate();
  const double tau = lambda / 4.0;
  const Slice sf = slice_tau(f, tau);
  const Slice sg = slice_tau(g, tau);
  const GFTOperator kf{lambda, grid, kernel_from_slice(sf, lambda, grid)};
  const GFTOperator kg{lambda, grid, kernel_from_slice(sg, lambda, grid)};
  const double nf = hs_norm(kf);
  const double ng = hs_norm(kg);
  if (nf == 0.0 || ng == 0.0) return 0.0;
  alias_warnings(f, lambda, grid, diag);
  const GFTOperator kfg{lambda, grid, kernel_from_slice(convolve_slices(sf, sg, tau), lambda, grid)};
  GFTOperator diff = compose(kf, kg);
  diff.kernel -= kfg.kernel;
  return hs_norm(diff) / (nf * ng);
}

}  // namespace heislac
