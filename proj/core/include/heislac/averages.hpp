#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "heislac/grid.hpp"
#include "heislac/matrix.hpp"
#include "heislac/numerics.hpp"

namespace heislac {

struct ScaleParams {
  double t1 = 1.0;
  double t2 = 1.0;

  static ScaleParams dyadic(int k1, int k2) { return {std::ldexp(1.0, k1), std::ldexp(1.0, k2)}; }
  void validate() const;
};

inline constexpr std::size_t kDefaultThetaNodes = 512;
inline constexpr std::size_t kMinThetaNodes = 64;

/// Quadrature on the circle in arc measure (weights sum to the interval length).
struct ThetaQuadrature {
  std::vector<double> nodes;
  std::vector<double> weights;

  /// Composite trapezoid on [0, 2 pi).
  static ThetaQuadrature trapezoid(std::size_t n = kDefaultThetaNodes);
  /// Gauss-Legendre on [a, b].
  static ThetaQuadrature gauss_legendre(double a, double b, std::size_t n);

  std::size_t size() const { return nodes.size(); }
  /// Rejects rules with fewer than kMinThetaNodes nodes.
  void validate() const;
};

/// Value of E^A_{t1,t2} f at one point:
/// sum_q w_q f(x - (t1 cos, t2 sin), x3 - x^T A (t1 cos, t2 sin)).
template <class Field>
double elliptic_average_at(const Field& f, const Matrix2& a, const ScaleParams& s, const ThetaQuadrature& q,
                           double x1, double x2, double x3) {
  thread_local std::vector<double> terms;
  terms.resize(q.size());
  for (std::size_t n = 0; n < q.size(); ++n) {
    const double y1 = s.t1 * std::cos(q.nodes[n]);
    const double y2 = s.t2 * std::sin(q.nodes[n]);
    terms[n] = q.weights[n] * f(x1 - y1, x2 - y2, x3 - a.bilinear(x1, x2, y1, y2));
  }
  return pairwise_sum(std::span<const double>(terms));
}

/// Evaluates E^A f at the centers of `out`. With `out_shear` set, output cell
/// (x, u) is evaluated at (x, u + (1/2) x^T S x), i.e. the result is reported
/// in the sheared frame (a measure-preserving change of variables).
template <class Field>
GridFunction3 elliptic_average_field(const Field& f, const Matrix2& a, const ScaleParams& s,
                                     const ThetaQuadrature& q, const Axes3& out,
                                     const Matrix2* out_shear = nullptr) {
  s.validate();
  q.validate();
  QuadraticForm form;
  if (out_shear) form = shear_coefficients(*out_shear);
  GridFunction3 g(out);
  for (std::size_t i = 0; i < out[0].size(); ++i) {
    const double x1 = out[0].center(i);
    for (std::size_t j = 0; j < out[1].size(); ++j) {
      const double x2 = out[1].center(j);
      const double off = form(x1, x2);
      for (std::size_t k = 0; k < out[2].size(); ++k)
        g.at(i, j, k) = elliptic_average_at(f, a, s, q, x1, x2, out[2].center(k) + off);
    }
  }
  return g;
}

struct AverageResult {
  GridFunction3 value;
  /// 1 where the orbit stays inside the box of f, 0 where zero extension was used.
  std::vector<std::uint8_t> valid;
  std::size_t invalid_count = 0;
};

/// E^A_{t1,t2} f on the grid of f. Points whose orbit leaves the box are
/// flagged invalid (and computed with zero extension) unless
/// `compact_support` declares that f vanishes near the box boundary.
AverageResult elliptic_average(const GridFunction3& f, const Matrix2& a, const ScaleParams& s,
                               const ThetaQuadrature& q, bool compact_support = false,
                               Diagnostics* diag = nullptr);

enum class MaxMode { circular, elliptic };

/// Dyadic index set: circular mode uses (k, k) pairs only.
struct LacunaryRange {
  std::vector<std::pair<int, int>> pairs;

  static LacunaryRange circular(int k_lo, int k_hi);  // k_lo <= k <= k_hi
  static LacunaryRange elliptic(int k1_lo, int k1_hi, int k2_lo, int k2_hi);
  MaxMode mode() const;
};

/// sup over the range of |E^A_{2^k1, 2^k2} f| at the centers of `out`.
template <class Field>
GridFunction3 lacunary_max_field(const Field& f, const Matrix2& a, const LacunaryRange& range,
                                 const ThetaQuadrature& q, const Axes3& out,
                                 const Matrix2* out_shear = nullptr) {
  if (range.pairs.empty()) throw std::invalid_argument("lacunary_max: empty index range");
  GridFunction3 acc(out);
  for (const auto& [k1, k2] : range.pairs) {
    const GridFunction3 e = elliptic_average_field(f, a, ScaleParams::dyadic(k1, k2), q, out, out_shear);
    auto dst = acc.samples();
    auto src = e.samples();
    for (std::size_t n = 0; n < dst.size(); ++n) dst[n] = std::max(dst[n], std::abs(src[n]));
  }
  return acc;
}

AverageResult lacunary_max(const GridFunction3& f, const Matrix2& a, const LacunaryRange& range,
                           const ThetaQuadrature& q, bool compact_support = false, Diagnostics* diag = nullptr);

/// Default twist of the group law, J = [[0, -2], [2, 0]].
inline Matrix2 default_twist() { return Matrix2::heisenberg_j(); }

/// f *_W g (x) = int f(x . y^{-1}) g(y) dy for the law
/// (x, x3).(y, y3) = (x + y, x3 + y3 + x^T W y), W skew. Output on the grid of f.
GridFunction3 twisted_convolution(const GridFunction3& f, const GridFunction3& g,
                                  const Matrix2& twist = default_twist(), Diagnostics* diag = nullptr);

/// Singular measure carried by the curve theta -> (t1 cos, t2 sin, height(theta))
/// with arc-measure quadrature in theta.
struct CurveMeasure {
  ScaleParams scales;
  ThetaQuadrature quadrature;
  std::function<double(double, double)> height;  // (y1, y2) -> y3; empty means 0
};

/// f *_W mu evaluated at the centers of the grid of f.
GridFunction3 twisted_convolution(const GridFunction3& f, const CurveMeasure& mu,
                                  const Matrix2& twist = default_twist(), Diagnostics* diag = nullptr);

/// E^A f via the conjugated route: shear by A_s, convolve with the curve
/// measure of height (1/2) y^T A_s y under the law twisted by A_w, shear back.
GridFunction3 transport_average(const GridFunction3& f, const Matrix2& a, const ScaleParams& s,
                                const ThetaQuadrature& q, Diagnostics* diag = nullptr);

}  // namespace heislac
