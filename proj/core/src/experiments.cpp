#include "heislac/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "heislac/errors.hpp"
#include "heislac/scalar_osc.hpp"

namespace heislac {

// ---------------------------------------------------------------- counterexample

double CounterexampleSpec::delta_value() const { return delta.value_or(std::ldexp(1.0, -2 * m + 1)); }

void CounterexampleSpec::validate() const {
  if (m < 1) throw std::invalid_argument("counterexample: m must be >= 1");
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("counterexample: p must be >= 1");
  const double d = delta_value();
  if (!(d > std::ldexp(1.0, -2 * m) && d < std::ldexp(1.0, -2 * m + 2))) {
    std::ostringstream os;
    os << "counterexample: delta = " << d << " violates 2^{-2m} < delta < 2^{-2m+2} for m = " << m;
    throw std::invalid_argument(os.str());
  }
  if (!a.is_finite()) throw std::invalid_argument("counterexample: non-finite matrix");
  if (x_cells < 2 || input_x_cells < 2) throw std::invalid_argument("counterexample: need >= 2 cells per x-axis");
  if (!(coarse > 0.0)) throw std::invalid_argument("counterexample: coarse width must be positive");
  if (theta_panels < kMinThetaNodes) throw std::invalid_argument("counterexample: fewer theta panels than the floor");
  if (!(cells_per_slab >= 8.0)) {
    std::ostringstream os;
    os << "counterexample: slabs of width " << d << " need an x3 map with at least 8 cells per slab, got "
       << cells_per_slab;
    throw ResolutionError(os.str(), 8);
  }
}

PanelAverager::PanelAverager(const GridFunction3& h, const Matrix2& lift_sym, std::size_t panels)
    : h_(h), lift_(shear_coefficients(lift_sym)), panels_(panels) {
  if (panels_ == 0) throw std::invalid_argument("panel average: need at least one panel");
  const auto& ax = h.axes();
  centers_ = ax[2].centers();
  const std::size_t n0 = ax[0].size(), n1 = ax[1].size(), n2 = ax[2].size();
  prim_.assign(n0 * n1 * n2, 0.0);
  total_.assign(n0 * n1, 0.0);
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      // piecewise linear between centers, constant in the boundary half-cells
      double acc = h.at(i, j, 0) * (centers_[0] - ax[2].lo());
      prim_[h.index(i, j, 0)] = acc;
      for (std::size_t k = 1; k < n2; ++k) {
        acc += 0.5 * (h.at(i, j, k - 1) + h.at(i, j, k)) * (centers_[k] - centers_[k - 1]);
        prim_[h.index(i, j, k)] = acc;
      }
      total_[i * n1 + j] = acc + h.at(i, j, n2 - 1) * (ax[2].hi() - centers_[n2 - 1]);
    }
}

double PanelAverager::primitive(double x1, double x2, double u) const {
  const auto& ax = h_.axes();
  if (x1 < ax[0].lo() || x1 > ax[0].hi() || x2 < ax[1].lo() || x2 > ax[1].hi()) return 0.0;
  if (u <= ax[2].lo()) return 0.0;
  const auto [i, w] = ax[0].locate(x1);
  const auto [j, v] = ax[1].locate(x2);
  const std::size_t n1 = ax[1].size(), n2 = ax[2].size();

  auto column = [&](std::size_t ci, std::size_t cj) {
    if (u >= ax[2].hi()) return total_[ci * n1 + cj];
    if (u <= centers_[0]) return h_.at(ci, cj, 0) * (u - ax[2].lo());
    if (u >= centers_[n2 - 1]) return prim_[h_.index(ci, cj, n2 - 1)] + h_.at(ci, cj, n2 - 1) * (u - centers_[n2 - 1]);
    const auto it = std::upper_bound(centers_.begin(), centers_.end(), u);
    const auto k = static_cast<std::size_t>(it - centers_.begin()) - 1;
    const double s = u - centers_[k], dk = centers_[k + 1] - centers_[k];
    const double a = h_.at(ci, cj, k), b = h_.at(ci, cj, k + 1);
    return prim_[h_.index(ci, cj, k)] + a * s + 0.5 * (b - a) * s * s / dk;
  };

  double out = (1.0 - w) * (1.0 - v) * column(i, j);
  if (w > 0.0) out += w * (1.0 - v) * column(i + 1, j);
  if (v > 0.0) out += (1.0 - w) * v * column(i, j + 1);
  if (w > 0.0 && v > 0.0) out += w * v * column(i + 1, j + 1);
  return out;
}

double PanelAverager::operator()(const Matrix2& a, const ScaleParams& s, double x1, double x2, double x3) const {
  const double dt = kTwoPi / static_cast<double>(panels_);
  // x3-argument of h along the orbit
  auto arg = [&](double th, double& z1, double& z2) {
    const double y1 = s.t1 * std::cos(th), y2 = s.t2 * std::sin(th);
    z1 = x1 - y1;
    z2 = x2 - y2;
    return x3 - a.bilinear(x1, x2, y1, y2) - lift_(z1, z2);
  };
  thread_local std::vector<double> terms;
  terms.resize(panels_);
  double z1 = 0.0, z2 = 0.0;
  double ua = arg(0.0, z1, z2);
  for (std::size_t n = 0; n < panels_; ++n) {
    const double tb = dt * static_cast<double>(n + 1);
    const double ub = arg(tb, z1, z2);
    double m1 = 0.0, m2 = 0.0;
    const double um = arg(tb - 0.5 * dt, m1, m2);
    const double span = ub - ua;
    if (std::abs(span) <= 1e-12 * (1.0 + std::abs(um)))
      terms[n] = dt * h_(m1, m2, um);
    else
      terms[n] = dt * (primitive(m1, m2, ub) - primitive(m1, m2, ua)) / span;
    ua = ub;
  }
  return pairwise_sum(std::span<const double>(terms));
}

namespace {

bool is_scalar_multiple_of_identity(const Matrix2& a) {
  return a.a12 == 0.0 && a.a21 == 0.0 && a.a11 == a.a22 && a.a11 != 0.0;
}

Axis output_x3_axis(const CounterexampleSpec& spec, const MatrixParts& parts) {
  const double d = spec.delta_value();
  const double fine = d / spec.cells_per_slab;
  // eigenvalue range of A_s bounds (1/2) y^T A_s y on the unit circle
  const double tr = parts.sym.a11 + parts.sym.a22;
  const double disc = std::hypot(parts.sym.a11 - parts.sym.a22, 2.0 * parts.sym.a12);
  const double lmin = 0.5 * (tr - disc), lmax = 0.5 * (tr + disc);
  std::vector<std::pair<double, double>> windows;
  for (int k = -spec.m + 1; k <= 0; ++k) {
    const double t2 = std::ldexp(1.0, 2 * k);
    const double lo = 0.5 * t2 * lmin - 0.5 * d, hi = 0.5 * t2 * lmax + 1.5 * d;
    if (hi - lo <= 16.0 * d) windows.emplace_back(lo, hi);
  }
  return Axis::stratified(0.0, 3.0, std::min(spec.coarse, 3.0 / 8.0), fine, windows);
}

}  // namespace

CounterexampleResult divergence_experiment(const CounterexampleSpec& spec, Diagnostics* diag) {
  spec.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const double d = spec.delta_value();
  const MatrixParts parts = decompose(spec.a);

  // input h_delta: 16 cells across the slab
  const Axes3 in_axes{Axis::uniform(-10.5, 10.5, spec.input_x_cells), Axis::uniform(-10.5, 10.5, spec.input_x_cells),
                      Axis::uniform(-d, 2.0 * d, 48)};
  const GridFunction3 h = sample(
      [d](double x1, double x2, double x3) {
        return (x1 * x1 + x2 * x2 <= 100.0 && x3 >= 0.0 && x3 <= d) ? 1.0 : 0.0;
      },
      in_axes);

  const Axes3 out{Axis::uniform(-1.0, 1.0, spec.x_cells), Axis::uniform(-1.0, 1.0, spec.x_cells),
                  output_x3_axis(spec, parts)};
  const PanelAverager avg(h, parts.sym, spec.theta_panels);
  const QuadraticForm frame = shear_coefficients(parts.sym);

  std::vector<double> terms;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < out[0].size(); ++i) {
    const double x1 = out[0].center(i);
    for (std::size_t j = 0; j < out[1].size(); ++j) {
      const double x2 = out[1].center(j);
      if (x1 * x1 + x2 * x2 > 1.0) continue;
      const double off = frame(x1, x2);
      for (std::size_t k = 0; k < out[2].size(); ++k) {
        double mx = 0.0;
        for (int kk = -spec.m + 1; kk <= 0; ++kk)
          mx = std::max(mx, std::abs(avg(spec.a, ScaleParams::dyadic(kk, kk), x1, x2, out[2].center(k) + off)));
        terms.push_back(std::pow(mx, spec.p) * out[0].width(i) * out[1].width(j) * out[2].width(k));
        ++cells;
      }
    }
  }

  CounterexampleResult r;
  r.m = spec.m;
  r.delta = d;
  r.p = spec.p;
  r.max_norm = std::pow(pairwise_sum(terms), 1.0 / spec.p);
  r.input_norm = lp_norm(h, spec.p);
  r.exact_input_norm = std::pow(100.0 * std::numbers::pi * d, 1.0 / spec.p);
  r.ratio = r.max_norm / r.input_norm;
  r.normalized = r.ratio / std::pow(static_cast<double>(spec.m), 1.0 / spec.p);
  r.oracle_ratio = kTwoPi * std::pow(spec.m * d * std::numbers::pi, 1.0 / spec.p) / r.exact_input_norm;
  r.output_cells = cells;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (diag && !is_scalar_multiple_of_identity(spec.a) && spec.a.is_symmetric() && !parts.sym.is_zero())
    diag->warn("counterexample: slab oracle applies to A = cI only; ratio reported without oracle comparison");
  return r;
}

// ---------------------------------------------------------------- dichotomy

double dichotomy_scale(const Matrix2& sym, int k1, int k2) {
  return std::abs(std::ldexp(sym.a11, 2 * k1)) + std::abs(std::ldexp(sym.a22, 2 * k2)) +
         std::abs(std::ldexp(sym.a12, k1 + k2));
}

double xi3_decay_slope(const Matrix2& sym, int k1, int k2, const DichotomyConfig& cfg) {
  const double scale = dichotomy_scale(sym, k1, k2);
  if (scale == 0.0) return -std::numeric_limits<double>::infinity();
  std::vector<double> js, vals;
  for (int j = cfg.j_lo; j <= cfg.j_hi; ++j) {
    const double xi3 = std::ldexp(1.0, j) / scale;
    js.push_back(j);
    vals.push_back(std::abs(measure_fourier(sym.a11, sym.a22, sym.a12, k1, k2, {0.0, 0.0, xi3})));
  }
  return fit_decay("log2_xi3", js, vals, 0).slope;
}

DichotomyEntry scan_matrix(const std::string& label, const Matrix2& a, const DichotomyConfig& cfg) {
  DichotomyEntry e;
  e.label = label;
  e.a = a;
  e.analytic = classify(a);
  const MatrixParts parts = decompose(a);
  if (!parts.skew.is_zero()) {
    // twisted case: bounded for every A_w != 0
    e.scanned = false;
    e.numeric_circular_bounded = true;
    e.numeric_elliptic_bounded = true;
    return e;
  }
  e.scanned = true;
  for (int k1 = -cfg.k_max; k1 <= cfg.k_max; ++k1)
    for (int k2 = -cfg.k_max; k2 <= cfg.k_max; ++k2) {
      DichotomyPair p{k1, k2, xi3_decay_slope(parts.sym, k1, k2, cfg), false};
      p.degenerate = p.slope >= cfg.degenerate_slope;
      if (p.degenerate) {
        e.numeric_elliptic_bounded = false;
        if (k1 == k2) e.numeric_circular_bounded = false;
      }
      e.pairs.push_back(p);
    }
  return e;
}

std::vector<LabeledMatrix> curated_matrix_suite() {
  return {
      {"I", Matrix2::identity()},
      {"2I", Matrix2::diag(2, 2)},
      {"-3I", Matrix2::diag(-3, -3)},
      {"0.5I", Matrix2::diag(0.5, 0.5)},
      {"diag(1,4)", Matrix2::diag(1, 4)},
      {"diag(1,16)", Matrix2::diag(1, 16)},
      {"diag(4,1)", Matrix2::diag(4, 1)},
      {"diag(16,1)", Matrix2::diag(16, 1)},
      {"diag(2,8)", Matrix2::diag(2, 8)},
      {"diag(-1,-4)", Matrix2::diag(-1, -4)},
      {"diag(3,12)", Matrix2::diag(3, 12)},
      {"J", Matrix2::heisenberg_j()},
      {"[[0,1],[-1,0]]", {0, 1, -1, 0}},
      {"(b,e,d)=(1,1,1)", Matrix2::symmetric(1, 1, 1)},
      {"(b,e,d)=(0,1,0)", Matrix2::symmetric(0, 1, 0)},
      {"(b,e,d)=(1,0.5,4)", Matrix2::symmetric(1, 0.5, 4)},
      {"diag(1,3)", Matrix2::diag(1, 3)},
      {"diag(1,-1)", Matrix2::diag(1, -1)},
      {"diag(1,0)", Matrix2::diag(1, 0)},
      {"diag(1,2)", Matrix2::diag(1, 2)},
      {"[[1,2],[0,3]]", {1, 2, 0, 3}},
      {"[[1,0.5],[-0.5,1]]", {1, 0.5, -0.5, 1}},
  };
}

// ---------------------------------------------------------------- decay sweeps

SweepConfig SweepConfig::standard(const std::string& parameter) {
  SweepConfig c;
  c.parameter = parameter;
  if (parameter == "s") {
    c.lo = 0;
    c.hi = 6;
    c.m = -6;
  } else if (parameter == "ell2") {
    c.lo = 5;
    c.hi = 10;
    c.s = 2;
    c.grid.points_per_period = 2.5;
  } else if (parameter == "ell1") {
    c.lo = 12;
    c.hi = 17;
    c.s = 6;
    c.ell2 = 0;
  } else {
    throw std::invalid_argument("sweep: parameter must be s, ell1 or ell2");
  }
  return c;
}

std::vector<OscKernelSpec> SweepConfig::specs() const {
  if (hi < lo) throw std::invalid_argument("sweep: empty range");
  std::vector<OscKernelSpec> out;
  for (int v = lo; v <= hi; ++v) {
    OscKernelSpec sp;
    sp.phase = phase;
    sp.big_lambda = big_lambda;
    sp.s = s;
    sp.m = m;
    sp.ell1 = ell1;
    sp.ell2 = ell2;
    sp.grid = grid;
    if (parameter == "s")
      sp.s = v;
    else if (parameter == "ell1")
      sp.ell1 = v;
    else if (parameter == "ell2")
      sp.ell2 = v;
    else
      throw std::invalid_argument("sweep: parameter must be s, ell1 or ell2");
    out.push_back(sp);
  }
  return out;
}

double sweep_threshold(const std::string& parameter) {
  if (parameter == "s" || parameter == "ell2") return -0.20;
  if (parameter == "ell1") return -0.40;
  throw std::invalid_argument("sweep: parameter must be s, ell1 or ell2");
}

bool ell1_regime(const OscKernelSpec& spec) {
  if (!spec.ell1) return false;
  const double rhs = 2.0 * (std::ldexp(1.0, spec.ell2.value_or(0)) + std::abs(spec.big_lambda));
  return std::ldexp(1.0, *spec.ell1) >= rhs;
}

DecayFit run_sweep(const SweepConfig& cfg) {
  const auto specs = cfg.specs();
  std::vector<double> params;
  for (int v = cfg.lo; v <= cfg.hi; ++v) params.push_back(v);
  DecayFit fit = decay_sweep(cfg.parameter, params, specs, cfg.tol);
  if (cfg.parameter == "ell1") {
    for (std::size_t i = 0; i < specs.size(); ++i)
      if (!ell1_regime(specs[i]))
        for (auto& p : fit.points)
          if (p.parameter == params[i] && p.in_fit) {
            p.in_fit = false;
            p.note = "outside the regime 2^ell1 >= 2 (2^ell2 + |L|)";
          }
    refit(fit);
  }
  return fit;
}

// ---------------------------------------------------------------- Fourier decay

EnvelopeResult fourier_envelope(const EnvelopeConfig& cfg) {
  if (cfg.directions == 0 || cfg.j_hi < cfg.j_lo) throw std::invalid_argument("envelope: empty configuration");
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> nd;
  std::vector<std::array<double, 4>> dirs(cfg.directions);
  for (auto& u : dirs) {
    double n = 0.0;
    do {
      for (double& c : u) c = nd(rng);
      n = std::hypot(std::hypot(u[0], u[1]), std::hypot(u[2], u[3]));
    } while (n == 0.0);
    for (double& c : u) c /= n;
  }
  EnvelopeResult r;
  std::vector<double> js, env;
  for (int j = cfg.j_lo; j <= cfg.j_hi; ++j) {
    const double mag = std::ldexp(1.0, j);
    double mx = 0.0;
    for (const auto& u : dirs)
      mx = std::max(mx, std::abs(scalar_osc_integral({mag * u[0], mag * u[1], mag * u[2], mag * u[3]})));
    js.push_back(j);
    env.push_back(mx);
    r.max_scaled.push_back(mx * std::pow(1.0 + mag, 0.25));
  }
  r.fit = fit_decay("log2_eta", js, env);
  return r;
}

DecayFit measure_xi3_decay(double b, double d, double e, int k1, int k2, int j_lo, int j_hi,
                           std::size_t skip_smallest) {
  std::vector<double> js, vals;
  for (int j = j_lo; j <= j_hi; ++j) {
    js.push_back(j);
    vals.push_back(std::abs(measure_fourier(b, d, e, k1, k2, {0.0, 0.0, std::ldexp(1.0, j)})));
  }
  return fit_decay("log2_xi3", js, vals, skip_smallest);
}

// ---------------------------------------------------------------- GFT checks

double gft_bump_f(double x1, double x2, double x3) {
  return std::exp(-(x1 * x1 + x2 * x2 + x3 * x3));
}

double gft_bump_g(double x1, double x2, double x3) {
  const double a = x1 - 0.5, b = x2 + 0.25, c = x3 - 0.3;
  return std::exp(-1.5 * (a * a + b * b) - 2.0 * c * c);
}

GftCheckResult gft_check(const GftCheckConfig& cfg, Diagnostics* diag) {
  const double w = cfg.half_width;
  const Box3 box{{-w, -w, -w}, {w, w, w}};
  const Resolution res{cfg.cells, cfg.cells, cfg.cells};
  const GridFunction3 f = sample(gft_bump_f, box, res);
  const GridFunction3 g = sample(gft_bump_g, box, res);
  GftCheckResult r;
  r.plancherel = plancherel_check(f, LambdaQuadrature::log_spaced(1.0 / 64.0, 64.0, cfg.per_octave), cfg.grid, diag);
  r.convolution = convolution_check(f, g, cfg.lambda, cfg.grid, diag);
  r.convolution_swapped = convolution_check(g, f, cfg.lambda, cfg.grid, diag);
  return r;
}

GftCheckConfig refine(const GftCheckConfig& cfg) {
  GftCheckConfig r = cfg;
  r.cells *= 2;
  r.grid.n *= 2;
  r.per_octave *= 2;
  return r;
}

}  // namespace heislac
