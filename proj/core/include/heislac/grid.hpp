#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "heislac/matrix.hpp"

namespace heislac {

/// Non-fatal notes collected while an operation runs (support escape,
/// aliasing, excluded sweep points, ...).
struct Diagnostics {
  std::vector<std::string> warnings;
  void warn(std::string msg) { warnings.push_back(std::move(msg)); }
  bool empty() const { return warnings.empty(); }
};

/// One axis of a tensor grid, stored as strictly increasing cell edges.
/// Samples live at cell centers.
class Axis {
 public:
  Axis() = default;

  static Axis uniform(double lo, double hi, std::size_t cells);
  static Axis from_edges(std::vector<double> edges);
  /// Uniform cells of width at most `coarse` on [lo, hi], refined to width at
  /// most `fine` inside each of the given windows (clipped to [lo, hi]).
  static Axis stratified(double lo, double hi, double coarse, double fine,
                         std::span<const std::pair<double, double>> windows);
  /// Cells growing geometrically away from `anchor` (first cell width `h0`,
  /// ratio `growth`), capped at `hmax`.
  static Axis graded(double lo, double hi, double anchor, double h0, double growth, double hmax);

  std::size_t size() const { return edges_.empty() ? 0 : edges_.size() - 1; }
  double lo() const { return edges_.front(); }
  double hi() const { return edges_.back(); }
  double center(std::size_t i) const { return 0.5 * (edges_[i] + edges_[i + 1]); }
  double width(std::size_t i) const { return edges_[i + 1] - edges_[i]; }
  double max_width() const;
  bool is_uniform() const { return uniform_; }
  const std::vector<double>& edges() const { return edges_; }
  std::vector<double> centers() const;

  /// Locates t between neighbouring centers: returns (i, w) so that linear
  /// interpolation is (1-w)*v[i] + w*v[i+1]. Points between the box edge and
  /// the outermost center clamp to that center. Requires lo() <= t <= hi().
  std::pair<std::size_t, double> locate(double t) const;

  bool same_as(const Axis& other) const { return edges_ == other.edges_; }

 private:
  explicit Axis(std::vector<double> edges, bool uniform);
  std::vector<double> edges_;
  bool uniform_ = false;
};

struct Box3 {
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};

  bool contains(double x1, double x2, double x3) const {
    return x1 >= lo[0] && x1 <= hi[0] && x2 >= lo[1] && x2 <= hi[1] && x3 >= lo[2] && x3 <= hi[2];
  }
};

using Resolution = std::array<std::size_t, 3>;
using Axes3 = std::array<Axis, 3>;

Axes3 uniform_axes(const Box3& box, const Resolution& res);

/// Sampled function on a box in R^2 x R, zero outside the box, trilinear
/// inside. Storage is row-major with the third axis contiguous.
template <class T>
class BasicGridFunction3 {
 public:
  using value_type = T;

  BasicGridFunction3() = default;
  BasicGridFunction3(Axes3 axes, std::vector<T> samples) : axes_(std::move(axes)), samples_(std::move(samples)) {
    for (const auto& a : axes_)
      if (a.size() < 1) throw std::invalid_argument("grid: empty axis");
    if (samples_.size() != count()) throw std::invalid_argument("grid: sample count does not match resolution");
  }
  explicit BasicGridFunction3(Axes3 axes) : axes_(std::move(axes)), samples_(count(), T{}) {}

  const Axes3& axes() const { return axes_; }
  const Axis& axis(int k) const { return axes_[k]; }
  Resolution resolution() const { return {axes_[0].size(), axes_[1].size(), axes_[2].size()}; }
  Box3 box() const {
    return {{axes_[0].lo(), axes_[1].lo(), axes_[2].lo()}, {axes_[0].hi(), axes_[1].hi(), axes_[2].hi()}};
  }
  std::size_t count() const { return axes_[0].size() * axes_[1].size() * axes_[2].size(); }

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * axes_[1].size() + j) * axes_[2].size() + k;
  }
  T& at(std::size_t i, std::size_t j, std::size_t k) { return samples_[index(i, j, k)]; }
  const T& at(std::size_t i, std::size_t j, std::size_t k) const { return samples_[index(i, j, k)]; }
  double cell_volume(std::size_t i, std::size_t j, std::size_t k) const {
    return axes_[0].width(i) * axes_[1].width(j) * axes_[2].width(k);
  }

  std::span<const T> samples() const { return samples_; }
  std::span<T> samples() { return samples_; }

  bool same_grid(const BasicGridFunction3& o) const {
    return axes_[0].same_as(o.axes_[0]) && axes_[1].same_as(o.axes_[1]) && axes_[2].same_as(o.axes_[2]);
  }

  /// Trilinear interpolation; zero outside the box.
  T operator()(double x1, double x2, double x3) const {
    if (!box().contains(x1, x2, x3)) return T{};
    const auto [i, wi] = axes_[0].locate(x1);
    const auto [j, wj] = axes_[1].locate(x2);
    const auto [k, wk] = axes_[2].locate(x3);
    const std::size_t i1 = wi > 0.0 ? i + 1 : i;
    const std::size_t j1 = wj > 0.0 ? j + 1 : j;
    const std::size_t k1 = wk > 0.0 ? k + 1 : k;
    auto lerp = [](const T& a, const T& b, double w) { return w == 0.0 ? a : a + (b - a) * w; };
    const T c00 = lerp(at(i, j, k), at(i, j, k1), wk);
    const T c01 = lerp(at(i, j1, k), at(i, j1, k1), wk);
    const T c10 = lerp(at(i1, j, k), at(i1, j, k1), wk);
    const T c11 = lerp(at(i1, j1, k), at(i1, j1, k1), wk);
    return lerp(lerp(c00, c01, wj), lerp(c10, c11, wj), wi);
  }

  BasicGridFunction3& operator*=(double s) {
    for (auto& v : samples_) v *= s;
    return *this;
  }
  friend BasicGridFunction3 operator*(double s, BasicGridFunction3 f) { return f *= s; }
  BasicGridFunction3& operator+=(const BasicGridFunction3& o) {
    if (!same_grid(o)) throw std::invalid_argument("grid: mismatched grids");
    for (std::size_t n = 0; n < samples_.size(); ++n) samples_[n] += o.samples_[n];
    return *this;
  }
  friend BasicGridFunction3 operator+(BasicGridFunction3 a, const BasicGridFunction3& b) { return a += b; }
  friend BasicGridFunction3 operator-(BasicGridFunction3 a, const BasicGridFunction3& b) {
    a += -1.0 * b;
    return a;
  }

 private:
  Axes3 axes_;
  std::vector<T> samples_;
};

using GridFunction3 = BasicGridFunction3<double>;
using ComplexGridFunction3 = BasicGridFunction3<std::complex<double>>;

/// Samples `field(x1, x2, x3)` at every cell center. Throws on non-finite values.
template <class Field>
auto sample(const Field& field, const Axes3& axes) {
  using R = std::decay_t<decltype(field(0.0, 0.0, 0.0))>;
  for (const auto& a : axes)
    if (a.size() < 2) throw std::invalid_argument("sample: resolution must be >= 2 on every axis");
  BasicGridFunction3<R> out(axes);
  const auto c0 = axes[0].centers();
  const auto c1 = axes[1].centers();
  const auto c2 = axes[2].centers();
  for (std::size_t i = 0; i < c0.size(); ++i)
    for (std::size_t j = 0; j < c1.size(); ++j)
      for (std::size_t k = 0; k < c2.size(); ++k) {
        const R v = field(c0[i], c1[j], c2[k]);
        if (!std::isfinite(std::abs(v))) throw std::invalid_argument("sample: non-finite field value");
        out.at(i, j, k) = v;
      }
  return out;
}

template <class Field>
auto sample(const Field& field, const Box3& box, const Resolution& res) {
  return sample(field, uniform_axes(box, res));
}

/// Riemann-sum L^p norm (cell volume weights); p = +inf gives max |f|.
double lp_norm(const GridFunction3& f, double p);
double lp_norm(const ComplexGridFunction3& f, double p);

/// Total mass sum |f| * volume.
double mass(const GridFunction3& f);

/// g(x, x3) = f(x, x3 + sign * (1/2) x^T sym x), resampled on the grid of f.
/// Records a warning when the sheared support loses more than 0.1% of the
/// mass of |f| through the box boundary.
GridFunction3 shear(const GridFunction3& f, const Matrix2& sym, int sign, Diagnostics* diag = nullptr);

/// Pointwise max of |f_i| over a family on a common grid.
GridFunction3 pointwise_sup(std::span<const GridFunction3> family);

/// Heuristic trilinear interpolation error: (1/8) sum_k h_k^2 max|d_k^2 f|
/// estimated from second differences of the samples.
double interpolation_tolerance(const GridFunction3& f);

/// Sup |f - g| over common cells whose centers satisfy `mask`.
template <class Mask>
double sup_difference(const GridFunction3& f, const GridFunction3& g, const Mask& mask) {
  if (!f.same_grid(g)) throw std::invalid_argument("sup_difference: mismatched grids");
  double worst = 0.0;
  const auto& ax = f.axes();
  for (std::size_t i = 0; i < ax[0].size(); ++i)
    for (std::size_t j = 0; j < ax[1].size(); ++j)
      for (std::size_t k = 0; k < ax[2].size(); ++k)
        if (mask(ax[0].center(i), ax[1].center(j), ax[2].center(k)))
          worst = std::max(worst, std::abs(f.at(i, j, k) - g.at(i, j, k)));
  return worst;
}

/// Flat binary snapshot: u64 little-endian header length, JSON header
/// {format, dtype, resolution, box, edges?}, then the samples in storage order.
void write_grid(const std::filesystem::path& path, const GridFunction3& f);
void write_grid(const std::filesystem::path& path, const ComplexGridFunction3& f);
GridFunction3 read_grid(const std::filesystem::path& path);
ComplexGridFunction3 read_complex_grid(const std::filesystem::path& path);

}  // namespace heislac
