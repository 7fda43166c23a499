#include "heislac/averages.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <sstream>

namespace heislac {

void ScaleParams::validate() const {
  if (!(t1 > 0.0) || !(t2 > 0.0) || !std::isfinite(t1) || !std::isfinite(t2))
    throw std::invalid_argument("scales: t1 and t2 must be positive and finite");
}

ThetaQuadrature ThetaQuadrature::trapezoid(std::size_t n) {
  if (n == 0) throw std::invalid_argument("theta quadrature: need at least one node");
  ThetaQuadrature q;
  q.nodes.resize(n);
  q.weights.assign(n, kTwoPi / static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) q.nodes[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
  return q;
}

ThetaQuadrature ThetaQuadrature::gauss_legendre(double a, double b, std::size_t n) {
  if (n == 0 || !(b > a)) throw std::invalid_argument("theta quadrature: need n >= 1 and a < b");
  // legendre_p_zeros returns the nonnegative zeros in increasing order
  const auto zeros = boost::math::legendre_p_zeros<double>(static_cast<int>(n));
  std::vector<std::pair<double, double>> nw;
  for (double z : zeros) {
    const double dp = boost::math::legendre_p_prime<double>(static_cast<int>(n), z);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    nw.emplace_back(z, w);
    if (z != 0.0) nw.emplace_back(-z, w);
  }
  std::sort(nw.begin(), nw.end());
  ThetaQuadrature q;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (const auto& [z, w] : nw) {
    q.nodes.push_back(mid + half * z);
    q.weights.push_back(half * w);
  }
  return q;
}

void ThetaQuadrature::validate() const {
  if (nodes.size() != weights.size()) throw std::invalid_argument("theta quadrature: size mismatch");
  if (nodes.size() < kMinThetaNodes) {
    std::ostringstream os;
    os << "theta quadrature: " << nodes.size() << " nodes is below the floor of " << kMinThetaNodes;
    throw std::invalid_argument(os.str());
  }
  for (double w : weights)
    if (!(w > 0.0)) throw std::invalid_argument("theta quadrature: weights must be positive");
}

namespace {

// True when every point of the orbit of (x, x3) stays inside the box.
bool orbit_inside(const Box3& box, const Matrix2& a, const ScaleParams& s, double x1, double x2, double x3) {
  if (x1 - s.t1 < box.lo[0] || x1 + s.t1 > box.hi[0]) return false;
  if (x2 - s.t2 < box.lo[1] || x2 + s.t2 > box.hi[1]) return false;
  // x^T A (t1 c, t2 s) = v . (c, s) with v = (t1 (A^T x)_1, t2 (A^T x)_2)
  const double v1 = s.t1 * (a.a11 * x1 + a.a21 * x2);
  const double v2 = s.t2 * (a.a12 * x1 + a.a22 * x2);
  const double amp = std::hypot(v1, v2);
  return x3 - amp >= box.lo[2] && x3 + amp <= box.hi[2];
}

void flag_validity(AverageResult& r, const GridFunction3& f, const Matrix2& a,
                   const std::vector<ScaleParams>& scales, bool compact_support, Diagnostics* diag) {
  r.valid.assign(f.count(), 1);
  if (compact_support) return;
  const Box3 box = f.box();
  const auto& ax = f.axes();
  for (std::size_t i = 0; i < ax[0].size(); ++i)
    for (std::size_t j = 0; j < ax[1].size(); ++j)
      for (std::size_t k = 0; k < ax[2].size(); ++k) {
        bool ok = true;
        for (const auto& s : scales) ok = ok && orbit_inside(box, a, s, ax[0].center(i), ax[1].center(j), ax[2].center(k));
        if (!ok) {
          r.valid[f.index(i, j, k)] = 0;
          ++r.invalid_count;
        }
      }
  if (diag && r.invalid_count > 0) {
    std::ostringstream os;
    os << "average: " << r.invalid_count << " of " << f.count() << " points have orbits leaving the box";
    diag->warn(os.str());
  }
}

}  // namespace

AverageResult elliptic_average(const GridFunction3& f, const Matrix2& a, const ScaleParams& s,
                               const ThetaQuadrature& q, bool compact_support, Diagnostics* diag) {
  if (!a.is_finite()) throw std::invalid_argument("elliptic_average: non-finite matrix");
  AverageResult r;
  r.value = elliptic_average_field(f, a, s, q, f.axes());
  flag_validity(r, f, a, {s}, compact_support, diag);
  return r;
}

LacunaryRange LacunaryRange::circular(int k_lo, int k_hi) {
  LacunaryRange r;
  for (int k = k_lo; k <= k_hi; ++k) r.pairs.emplace_back(k, k);
  return r;
}

LacunaryRange LacunaryRange::elliptic(int k1_lo, int k1_hi, int k2_lo, int k2_hi) {
  LacunaryRange r;
  for (int k1 = k1_lo; k1 <= k1_hi; ++k1)
    for (int k2 = k2_lo; k2 <= k2_hi; ++k2) r.pairs.emplace_back(k1, k2);
  return r;
}

MaxMode LacunaryRange::mode() const {
  for (const auto& [k1, k2] : pairs)
    if (k1 != k2) return MaxMode::elliptic;
  return MaxMode::circular;
}

AverageResult lacunary_max(const GridFunction3& f, const Matrix2& a, const LacunaryRange& range,
                           const ThetaQuadrature& q, bool compact_support, Diagnostics* diag) {
  AverageResult r;
  r.value = lacunary_max_field(f, a, range, q, f.axes());
  std::vector<ScaleParams> scales;
  for (const auto& [k1, k2] : range.pairs) scales.push_back(ScaleParams::dyadic(k1, k2));
  flag_validity(r, f, a, scales, compact_support, diag);
  return r;
}

namespace {

void check_twist(const Matrix2& w) {
  if (!(w.a11 == 0.0 && w.a22 == 0.0 && w.a12 == -w.a21))
    throw std::invalid_argument("twisted_convolution: twist matrix must be skew");
}

bool nonnegative(const GridFunction3& f) {
  for (double v : f.samples())
    if (v < 0.0) return false;
  return true;
}

}  // namespace

GridFunction3 twisted_convolution(const GridFunction3& f, const GridFunction3& g, const Matrix2& twist,
                                  Diagnostics* diag) {
  check_twist(twist);
  struct Atom {
    double y1, y2, y3, mass;
  };
  std::vector<Atom> atoms;
  const auto& gx = g.axes();
  for (std::size_t i = 0; i < gx[0].size(); ++i)
    for (std::size_t j = 0; j < gx[1].size(); ++j)
      for (std::size_t k = 0; k < gx[2].size(); ++k) {
        const double v = g.at(i, j, k);
        if (v != 0.0) atoms.push_back({gx[0].center(i), gx[1].center(j), gx[2].center(k), v * g.cell_volume(i, j, k)});
      }
  const auto& ax = f.axes();
  GridFunction3 out(ax);
  std::vector<double> terms(atoms.size());
  for (std::size_t i = 0; i < ax[0].size(); ++i)
    for (std::size_t j = 0; j < ax[1].size(); ++j)
      for (std::size_t k = 0; k < ax[2].size(); ++k) {
        const double x1 = ax[0].center(i), x2 = ax[1].center(j), x3 = ax[2].center(k);
        for (std::size_t n = 0; n < atoms.size(); ++n) {
          const Atom& y = atoms[n];
          terms[n] = y.mass * f(x1 - y.y1, x2 - y.y2, x3 - y.y3 - twist.bilinear(x1, x2, y.y1, y.y2));
        }
        out.at(i, j, k) = pairwise_sum(terms);
      }
  if (diag && nonnegative(f) && nonnegative(g)) {
    const double expect = mass(f) * mass(g);
    const double got = mass(out);
    if (expect > 0.0 && got < (1.0 - 1e-3) * expect) {
      std::ostringstream os;
      os << "twisted_convolution: support leaves the box, mass fraction lost " << 1.0 - got / expect;
      diag->warn(os.str());
    }
  }
  return out;
}

GridFunction3 twisted_convolution(const GridFunction3& f, const CurveMeasure& mu, const Matrix2& twist,
                                  Diagnostics* diag) {
  check_twist(twist);
  mu.scales.validate();
  mu.quadrature.validate();
  const std::size_t nq = mu.quadrature.size();
  std::vector<double> y1(nq), y2(nq), y3(nq);
  for (std::size_t n = 0; n < nq; ++n) {
    y1[n] = mu.scales.t1 * std::cos(mu.quadrature.nodes[n]);
    y2[n] = mu.scales.t2 * std::sin(mu.quadrature.nodes[n]);
    y3[n] = mu.height ? mu.height(y1[n], y2[n]) : 0.0;
  }
  const auto& ax = f.axes();
  GridFunction3 out(ax);
  std::vector<double> terms(nq);
  for (std::size_t i = 0; i < ax[0].size(); ++i)
    for (std::size_t j = 0; j < ax[1].size(); ++j)
      for (std::size_t k = 0; k < ax[2].size(); ++k) {
        const double x1 = ax[0].center(i), x2 = ax[1].center(j), x3 = ax[2].center(k);
        for (std::size_t n = 0; n < nq; ++n)
          terms[n] = mu.quadrature.weights[n] * f(x1 - y1[n], x2 - y2[n], x3 - y3[n] - twist.bilinear(x1, x2, y1[n], y2[n]));
        out.at(i, j, k) = pairwise_sum(terms);
      }
  if (diag && nonnegative(f)) {
    double total = 0.0;
    for (double w : mu.quadrature.weights) total += w;
    const double expect = mass(f) * total;
    const double got = mass(out);
    if (expect > 0.0 && got < (1.0 - 1e-3) * expect) {
      std::ostringstream os;
      os << "twisted_convolution: support leaves the box, mass fraction lost " << 1.0 - got / expect;
      diag->warn(os.str());
    }
  }
  return out;
}

GridFunction3 transport_average(const GridFunction3& f, const Matrix2& a, const ScaleParams& s,
                                const ThetaQuadrature& q, Diagnostics* diag) {
  const MatrixParts parts = decompose(a);
  const QuadraticForm form = shear_coefficients(parts.sym);
  const GridFunction3 lifted = shear(f, parts.sym, +1, diag);
  CurveMeasure mu{s, q, {}};
  if (!form.is_zero()) mu.height = [form](double y1, double y2) { return form(y1, y2); };
  const GridFunction3 h = twisted_convolution(lifted, mu, parts.skew, diag);
  return shear(h, parts.sym, -1, diag);
}

}  // namespace heislac
