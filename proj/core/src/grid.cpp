#include "heislac/grid.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "heislac/numerics.hpp"

namespace heislac {

Axis::Axis(std::vector<double> edges, bool uniform) : edges_(std::move(edges)), uniform_(uniform) {}

Axis Axis::uniform(double lo, double hi, std::size_t cells) {
  if (cells < 1) throw std::invalid_argument("axis: need at least one cell");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) throw std::invalid_argument("axis: need lo < hi");
  std::vector<double> e(cells + 1);
  const double h = (hi - lo) / static_cast<double>(cells);
  for (std::size_t i = 0; i <= cells; ++i) e[i] = lo + h * static_cast<double>(i);
  e.back() = hi;
  return Axis(std::move(e), true);
}

Axis Axis::from_edges(std::vector<double> edges) {
  if (edges.size() < 2) throw std::invalid_argument("axis: need at least two edges");
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    if (!std::isfinite(edges[i]) || !(edges[i + 1] > edges[i]))
      throw std::invalid_argument("axis: edges must be finite and strictly increasing");
  return Axis(std::move(edges), false);
}

namespace {

void append_uniform(std::vector<double>& e, double a, double b, double hmax) {
  if (!(b > a)) return;
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / hmax - 1e-9)));
  const double h = (b - a) / static_cast<double>(n);
  for (std::size_t i = 1; i <= n; ++i) e.push_back(i == n ? b : a + h * static_cast<double>(i));
}

}  // namespace

Axis Axis::stratified(double lo, double hi, double coarse, double fine,
                      std::span<const std::pair<double, double>> windows) {
  if (!(hi > lo) || !(coarse > 0) || !(fine > 0)) throw std::invalid_argument("axis: bad stratified parameters");
  std::vector<std::pair<double, double>> w;
  for (auto [a, b] : windows) {
    a = std::max(a, lo);
    b = std::min(b, hi);
    if (b > a) w.emplace_back(a, b);
  }
  std::sort(w.begin(), w.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& iv : w) {
    if (!merged.empty() && iv.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, iv.second);
    else
      merged.push_back(iv);
  }
  std::vector<double> e{lo};
  double cur = lo;
  for (const auto& [a, b] : merged) {
    append_uniform(e, cur, a, coarse);
    append_uniform(e, std::max(cur, a), b, fine);
    cur = b;
  }
  append_uniform(e, cur, hi, coarse);
  return Axis(std::move(e), merged.empty());
}

Axis Axis::graded(double lo, double hi, double anchor, double h0, double growth, double hmax) {
  if (!(hi > lo) || !(h0 > 0) || !(growth >= 1.0) || !(hmax >= h0))
    throw std::invalid_argument("axis: bad graded parameters");
  anchor = std::clamp(anchor, lo, hi);
  std::vector<double> up{anchor};
  for (double h = h0, t = anchor; t < hi; h = std::min(h * growth, hmax)) {
    t = std::min(hi, t + h);
    if (hi - t < 0.25 * h) t = hi;
    up.push_back(t);
  }
  std::vector<double> down;
  for (double h = h0, t = anchor; t > lo; h = std::min(h * growth, hmax)) {
    t = std::max(lo, t - h);
    if (t - lo < 0.25 * h) t = lo;
    down.push_back(t);
  }
  std::vector<double> e(down.rbegin(), down.rend());
  e.insert(e.end(), up.begin(), up.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return from_edges(std::move(e));
}

double Axis::max_width() const {
  double h = 0.0;
  for (std::size_t i = 0; i < size(); ++i) h = std::max(h, width(i));
  return h;
}

std::vector<double> Axis::centers() const {
  std::vector<double> c(size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = center(i);
  return c;
}

std::pair<std::size_t, double> Axis::locate(double t) const {
  const std::size_t n = size();
  if (n == 1 || t <= center(0)) return {0, 0.0};
  if (t >= center(n - 1)) return {n - 1, 0.0};
  std::size_t i;
  if (uniform_) {
    const double h = (hi() - lo()) / static_cast<double>(n);
    i = static_cast<std::size_t>(std::floor((t - lo()) / h - 0.5));
    i = std::min(i, n - 2);
  } else {
    // first center strictly greater than t, minus one
    std::size_t a = 0, b = n - 1;
    while (b - a > 1) {
      const std::size_t m = (a + b) / 2;
      if (center(m) <= t) a = m; else b = m;
    }
    i = a;
  }
  const double c0 = center(i), c1 = center(i + 1);
  return {i, std::clamp((t - c0) / (c1 - c0), 0.0, 1.0)};
}

Axes3 uniform_axes(const Box3& box, const Resolution& res) {
  return {Axis::uniform(box.lo[0], box.hi[0], res[0]), Axis::uniform(box.lo[1], box.hi[1], res[1]),
          Axis::uniform(box.lo[2], box.hi[2], res[2])};
}

namespace {

template <class T>
double lp_norm_impl(const BasicGridFunction3<T>& f, double p) {
  if (std::isnan(p) || p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  const auto [n0, n1, n2] = f.resolution();
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : f.samples()) m = std::max(m, std::abs(v));
    return m;
  }
  std::vector<double> terms;
  terms.reserve(f.count());
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j)
      for (std::size_t k = 0; k < n2; ++k) {
        const double a = std::abs(f.at(i, j, k));
        terms.push_back(a == 0.0 ? 0.0 : std::pow(a, p) * f.cell_volume(i, j, k));
      }
  return std::pow(pairwise_sum(terms), 1.0 / p);
}

}  // namespace

double lp_norm(const GridFunction3& f, double p) { return lp_norm_impl(f, p); }
double lp_norm(const ComplexGridFunction3& f, double p) { return lp_norm_impl(f, p); }

double mass(const GridFunction3& f) { return lp_norm_impl(f, 1.0); }

GridFunction3 shear(const GridFunction3& f, const Matrix2& sym, int sign, Diagnostics* diag) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("shear: sign must be +1 or -1");
  const QuadraticForm q = shear_coefficients(sym);
  GridFunction3 g(f.axes());
  const auto& ax = f.axes();
  const double s = static_cast<double>(sign);
  const std::size_t n2 = ax[2].size();
  std::vector<double> line(n2);
  for (std::size_t i = 0; i < ax[0].size(); ++i) {
    const double x1 = ax[0].center(i);
    for (std::size_t j = 0; j < ax[1].size(); ++j) {
      const double x2 = ax[1].center(j);
      const double off = s * q(x1, x2);
      for (std::size_t k = 0; k < n2; ++k) {
        const double t = ax[2].center(k) + off;
        double v = 0.0;
        if (t >= ax[2].lo() && t <= ax[2].hi()) {
          const auto [kk, w] = ax[2].locate(t);
          v = w == 0.0 ? f.at(i, j, kk) : (1.0 - w) * f.at(i, j, kk) + w * f.at(i, j, kk + 1);
        }
        g.at(i, j, k) = v;
      }
    }
  }
  if (diag) {
    const double m0 = mass(f);
    const double m1 = mass(g);
    if (m0 > 0.0 && m1 < (1.0 - 1e-3) * m0) {
      std::ostringstream os;
      os << "shear: sheared support leaves the box, mass fraction lost " << (1.0 - m1 / m0);
      diag->warn(os.str());
    }
  }
  return g;
}

GridFunction3 pointwise_sup(std::span<const GridFunction3> family) {
  if (family.empty()) throw std::invalid_argument("pointwise_sup: empty family");
  GridFunction3 out(family[0].axes());
  auto dst = out.samples();
  for (const auto& f : family) {
    if (!f.same_grid(out)) throw std::invalid_argument("pointwise_sup: mismatched grids");
    auto src = f.samples();
    for (std::size_t n = 0; n < dst.size(); ++n) dst[n] = std::max(dst[n], std::abs(src[n]));
  }
  return out;
}

double interpolation_tolerance(const GridFunction3& f) {
  const auto [n0, n1, n2] = f.resolution();
  const std::array<std::size_t, 3> n{n0, n1, n2};
  double total = 0.0;
  for (int a = 0; a < 3; ++a) {
    if (n[a] < 3) continue;
    const Axis& ax = f.axis(a);
    double worst = 0.0;
    for (std::size_t i = 0; i < n0; ++i)
      for (std::size_t j = 0; j < n1; ++j)
        for (std::size_t k = 0; k < n2; ++k) {
          std::array<std::size_t, 3> id{i, j, k};
          const std::size_t c = id[a];
          if (c == 0 || c + 1 >= n[a]) continue;
          auto val = [&](std::size_t m) {
            auto t = id;
            t[a] = m;
            return f.at(t[0], t[1], t[2]);
          };
          const double hm = ax.center(c) - ax.center(c - 1);
          const double hp = ax.center(c + 1) - ax.center(c);
          const double d2 = 2.0 * ((val(c + 1) - val(c)) / hp - (val(c) - val(c - 1)) / hm) / (hm + hp);
          worst = std::max(worst, std::abs(d2) * std::max(hm, hp) * std::max(hm, hp));
        }
    total += worst / 8.0;
  }
  return total;
}

}  // namespace heislac
