#include "heislac/runs.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "heislac/averages.hpp"
#include "heislac/cutoffs.hpp"
#include "heislac/errors.hpp"
#include "heislac/fft.hpp"
#include "heislac/lp_projection.hpp"
#include "heislac/op_norm.hpp"
#include "heislac/phase.hpp"
#include "heislac/scalar_osc.hpp"

namespace heislac {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

json matrix_json(const Matrix2& a) { return json::array({a.a11, a.a12, a.a21, a.a22}); }

template <class T>
json opt_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string short_num(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

json phase_json(const PhaseSpec& p) {
  if (p.kind == PhaseSpec::Kind::circle) return {{"kind", "circle"}};
  return {{"kind", "general"}, {"b", p.b}, {"d", p.d}, {"e", p.e}, {"k1", p.k1}, {"k2", p.k2}};
}

json sweep_json(const SweepConfig& c) {
  return {{"parameter", c.parameter},
          {"lo", c.lo},
          {"hi", c.hi},
          {"big_lambda", c.big_lambda},
          {"s", c.s},
          {"m", opt_json(c.m)},
          {"ell1", opt_json(c.ell1)},
          {"ell2", opt_json(c.ell2)},
          {"phase", phase_json(c.phase)},
          {"points_per_period", c.grid.points_per_period},
          {"points_per_bump", c.grid.points_per_bump},
          {"max_points", c.grid.max_points},
          {"tol", c.tol}};
}

// Largest |sum_l phi(t / 2^l) - 1| on a log-spaced set inside the window, and
// the largest deviation from the closed-form remainder outside it.
std::pair<double, double> telescoping_errors(int L) {
  double inside = 0.0, outside = 0.0;
  constexpr int kPoints = 2001;
  for (int sgn : {1, -1})
    for (int i = 0; i < kPoints; ++i) {
      const double e = -L + 2.0 * L * i / (kPoints - 1);
      const double t = sgn * std::exp2(e);
      inside = std::max(inside, std::abs(partition_check(t, L) - 1.0));
      const double wide = sgn * std::exp2(-L - 3 + (2.0 * L + 6.0) * i / (kPoints - 1));
      const double closed = psi(std::ldexp(wide, -L)) - psi(std::ldexp(wide, L + 1));
      outside = std::max(outside, std::abs(partition_check(wide, L) - closed));
    }
  return {inside, outside};
}

double beta_telescoping_error(int S) {
  double worst = 0.0;
  constexpr int kPoints = 4001;
  for (int i = 0; i < kPoints; ++i) {
    const double x = -1.0 + 2.0 * i / (kPoints - 1);
    worst = std::max(worst, std::abs(beta_partition(x, S) - (eta_c(x) - eta_c(std::ldexp(x, S + 1)))));
  }
  return worst;
}

// P^1_{l+2} P^1_l applied through one transform on a random signal; returns
// (max |chain|, max |two separate passes|).
std::pair<double, double> orthogonality_residuals(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  constexpr std::size_t n = 256;
  const double h = 1.0 / 64.0;
  ComplexVec v(n);
  for (auto& c : v) c = {nd(rng), nd(rng)};
  double chain = 0.0, passes = 0.0;
  for (int l = 0; l <= 4; ++l)
    for (int gap : {2, 3, 5}) {
      const int ells[2] = {l, l + gap};
      for (const auto& c : freq_multiplier_chain_1d(v, h, ells)) chain = std::max(chain, std::abs(c));
      const ComplexVec once = freq_multiplier_1d(v, h, l);
      for (const auto& c : freq_multiplier_1d(once, h, l + gap)) passes = std::max(passes, std::abs(c));
    }
  return {chain, passes};
}

Matrix2 random_matrix(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng), u(rng)};
}

// Largest entrywise error of sym + skew = A in rounding units of the entry
// pair the part is computed from (a_ij and a_ji).
double decomposition_ulps(const Matrix2& a) {
  const MatrixParts p = decompose(a);
  const Matrix2 r = p.sym + p.skew;
  const double in[4] = {a.a11, a.a12, a.a21, a.a22};
  const double out[4] = {r.a11, r.a12, r.a21, r.a22};
  const double pair[4] = {std::abs(a.a11), std::max(std::abs(a.a12), std::abs(a.a21)),
                          std::max(std::abs(a.a12), std::abs(a.a21)), std::abs(a.a22)};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (out[i] == in[i]) continue;
    const double ulp = std::nextafter(pair[i], std::numeric_limits<double>::infinity()) - pair[i];
    worst = std::max(worst, std::abs(out[i] - in[i]) / ulp);
  }
  return worst;
}

bool decomposition_shape_exact(const Matrix2& a) {
  const MatrixParts p = decompose(a);
  return p.sym.a12 == p.sym.a21 && p.skew.a12 == -p.skew.a21 && p.skew.a11 == 0.0 && p.skew.a22 == 0.0;
}

// Direct E^A f against the conjugated route on the cells where the direct
// orbit stays inside the box.
struct RouteComparison {
  double sup_difference = 0.0;
  double tolerance = 0.0;
};

RouteComparison compare_routes(const Matrix2& a, const ScaleParams& s, std::size_t cells) {
  const Box3 box{{-4.0, -4.0, -4.0}, {4.0, 4.0, 4.0}};
  const GridFunction3 f = sample(smooth_test_bump, box, {cells, cells, cells});
  const auto q = ThetaQuadrature::trapezoid(kDefaultThetaNodes);
  const AverageResult direct = elliptic_average(f, a, s, q, false);
  const GridFunction3 conj = transport_average(f, a, s, q);
  RouteComparison r;
  const auto dv = direct.value.samples();
  const auto cv = conj.samples();
  for (std::size_t n = 0; n < dv.size(); ++n)
    if (direct.valid[n]) r.sup_difference = std::max(r.sup_difference, std::abs(dv[n] - cv[n]));
  // the conjugated route resamples on the output grid
  r.tolerance = interpolation_tolerance(direct.value);
  return r;
}

}  // namespace

double smooth_test_bump(double x1, double x2, double x3) {
  const double r2 = (x1 * x1 + x2 * x2) / 2.25 + x3 * x3 / 1.44;
  return r2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0;
}

HessianOrders hessian_fd_orders(const PhaseSpec& p, double x, double y, double h) {
  auto mixed = [&](double hh) {
    return (phase_eval(p, x + hh, y + hh) - phase_eval(p, x + hh, y - hh) - phase_eval(p, x - hh, y + hh) +
            phase_eval(p, x - hh, y - hh)) /
           (4.0 * hh * hh);
  };
  auto dy2 = [&](double hh) {
    return (phase_hessian(p, x, y + hh) - 2.0 * phase_hessian(p, x, y) + phase_hessian(p, x, y - hh)) / (hh * hh);
  };
  HessianOrders o;
  const double hx = phase_hessian(p, x, y);
  o.hessian = std::log2(std::abs(mixed(h) - hx) / std::abs(mixed(0.5 * h) - hx));
  if (p.kind == PhaseSpec::Kind::general) {
    const double d = phase_hessian_dy2(p, x, y);
    o.hessian_dy2 = std::log2(std::abs(dy2(h) - d) / std::abs(dy2(0.5 * h) - d));
  }
  return o;
}

// ---------------------------------------------------------------- classify / dichotomy

ExperimentReport classify_report(const Matrix2& a, double tol) {
  ExperimentReport r;
  r.id = "classify";
  r.config_json = json{{"matrix", matrix_json(a)}, {"tol", tol}}.dump();
  const MatrixClassification c = classify(a, tol);
  const MatrixParts parts = decompose(a);
  r.label("verdict", c.summary());
  r.label("circular", c.circular_bounded ? "bounded" : "unbounded");
  r.label("elliptic", c.elliptic_bounded ? "bounded" : "unbounded");
  if (c.witness_c) r.scalar("witness_c", *c.witness_c);
  if (c.witness_a) r.scalar("witness_a", *c.witness_a);
  r.tables.push_back({"classify_parts",
                      {"part", "a11", "a12", "a21", "a22"},
                      {{"sym", fmt(parts.sym.a11), fmt(parts.sym.a12), fmt(parts.sym.a21), fmt(parts.sym.a22)},
                       {"skew", fmt(parts.skew.a11), fmt(parts.skew.a12), fmt(parts.skew.a21), fmt(parts.skew.a22)}}});
  // the forbidden circular form forces the forbidden elliptic form with a = 0
  r.clause("circular unbounded implies elliptic unbounded", c.circular_bounded || !c.elliptic_bounded);
  return r;
}

ExperimentReport dichotomy_report(const std::vector<LabeledMatrix>& suite, const DichotomyConfig& cfg) {
  const auto t0 = Clock::now();
  ExperimentReport r;
  r.id = "dichotomy";
  json mats = json::array();
  for (const auto& m : suite) mats.push_back({{"label", m.label}, {"matrix", matrix_json(m.a)}});
  r.config_json = json{{"k_max", cfg.k_max},
                       {"j_lo", cfg.j_lo},
                       {"j_hi", cfg.j_hi},
                       {"degenerate_slope", cfg.degenerate_slope},
                       {"matrices", mats}}
                      .dump();
  Table t{"dichotomy",
          {"label", "a11", "a12", "a21", "a22", "analytic_circular", "analytic_elliptic", "numeric_circular",
           "numeric_elliptic", "scanned", "degenerate_pairs", "agree"},
          {}};
  std::size_t agree = 0;
  std::string first_bad;
  for (const auto& m : suite) {
    const DichotomyEntry e = scan_matrix(m.label, m.a, cfg);
    std::size_t ndeg = 0;
    for (const auto& p : e.pairs) ndeg += p.degenerate;
    auto word = [](bool b) { return std::string(b ? "bounded" : "unbounded"); };
    t.rows.push_back({e.label, fmt(m.a.a11), fmt(m.a.a12), fmt(m.a.a21), fmt(m.a.a22),
                      word(e.analytic.circular_bounded), word(e.analytic.elliptic_bounded),
                      word(e.numeric_circular_bounded), word(e.numeric_elliptic_bounded), yes_no(e.scanned),
                      std::to_string(ndeg), yes_no(e.agrees())});
    if (e.agrees())
      ++agree;
    else if (first_bad.empty())
      first_bad = e.label;
  }
  r.tables.push_back(std::move(t));
  r.scalar("matrices", static_cast<double>(suite.size()));
  r.scalar("agreements", static_cast<double>(agree));
  r.scalar("seconds", since(t0));
  std::ostringstream d;
  d << agree << "/" << suite.size() << " agree" << (first_bad.empty() ? "" : ", first disagreement: " + first_bad);
  r.clause("numeric scan matches classify", agree == suite.size(), d.str());
  return r;
}

// ---------------------------------------------------------------- measure transform

ExperimentReport measure_decay_report(const MeasureDecayConfig& cfg) {
  const auto t0 = Clock::now();
  ExperimentReport r;
  r.id = "fourier_decay";
  r.config_json = json{{"b", cfg.b},         {"d", cfg.d},       {"e", cfg.e},
                       {"k1", cfg.k1},       {"k2", cfg.k2},     {"j_lo", cfg.j_lo},
                       {"j_hi", cfg.j_hi},   {"tol", cfg.tol},   {"degenerate_slope", cfg.degenerate_slope},
                       {"decay_slope", cfg.decay_slope}}
                      .dump();
  const bool analytic_degenerate =
      cfg.e == 0.0 && std::ldexp(cfg.b, 2 * cfg.k1) == std::ldexp(cfg.d, 2 * cfg.k2);
  Table t{"fourier_decay_values", {"xi3", "modulus"}, {}};
  std::vector<double> js, vals;
  double worst = 0.0;
  for (int j = cfg.j_lo; j <= cfg.j_hi; ++j) {
    const double mag = std::ldexp(1.0, j);
    for (double xi3 : {mag, -mag}) {
      const double v = std::abs(measure_fourier(cfg.b, cfg.d, cfg.e, cfg.k1, cfg.k2, {0.0, 0.0, xi3}));
      t.rows.push_back({fmt(xi3), fmt(v)});
      worst = std::max(worst, std::abs(v - 0.5 * std::numbers::pi));
      if (xi3 > 0) {
        js.push_back(j);
        vals.push_back(v);
      }
    }
  }
  r.tables.push_back(std::move(t));
  DecayFit fit = fit_decay("log2_xi3", js, vals, analytic_degenerate ? 0 : kPreAsymptotic);
  const bool numeric_degenerate = fit.slope >= cfg.degenerate_slope;
  r.fits.push_back(fit);
  r.label("verdict", numeric_degenerate ? "degenerate" : "decaying");
  r.scalar("slope", fit.slope);
  r.scalar("max_abs_deviation_from_half_pi", worst);
  r.scalar("seconds", since(t0));
  if (analytic_degenerate) {
    r.clause("modulus is pi/2 at every xi3", worst <= cfg.tol, "max deviation " + short_num(worst));
    r.clause("flagged degenerate", numeric_degenerate, "slope " + short_num(fit.slope));
  } else {
    r.clause("decay slope", fit.slope <= cfg.decay_slope,
             "slope " + short_num(fit.slope) + " vs " + short_num(cfg.decay_slope));
  }
  return r;
}

ExperimentReport envelope_report(const EnvelopeConfig& cfg, double max_slope, double max_residual) {
  const auto t0 = Clock::now();
  ExperimentReport r;
  r.id = "fourier_envelope";
  r.config_json = json{{"directions", cfg.directions},
                       {"j_lo", cfg.j_lo},
                       {"j_hi", cfg.j_hi},
                       {"seed", cfg.seed},
                       {"max_slope", max_slope},
                       {"max_residual", max_residual}}
                      .dump();
  const EnvelopeResult e = fourier_envelope(cfg);
  r.fits.push_back(e.fit);
  Table t{"fourier_envelope_scaled", {"j", "max_modulus", "max_modulus_times_(1+|eta|)^(1/4)"}, {}};
  for (std::size_t i = 0; i < e.max_scaled.size(); ++i)
    t.rows.push_back({std::to_string(cfg.j_lo + static_cast<int>(i)), fmt(e.fit.points[i].value), fmt(e.max_scaled[i])});
  r.tables.push_back(std::move(t));
  double ss = 0.0;
  for (const auto& p : e.fit.points)
    if (p.in_fit) {
      const double res = std::log2(p.value) - (e.fit.slope * p.parameter + e.fit.intercept);
      ss += res * res;
    }
  r.scalar("slope", e.fit.slope);
  r.scalar("max_residual", e.fit.max_residual);
  r.scalar("rms_residual", std::sqrt(ss / static_cast<double>(e.fit.fitted())));
  r.scalar("seconds", since(t0));
  r.clause("envelope slope", e.fit.slope <= max_slope,
           "slope " + short_num(e.fit.slope) + " vs " + short_num(max_slope));
  r.clause("envelope fit residual (log2)", e.fit.max_residual <= max_residual,
           "max residual " + short_num(e.fit.max_residual) + " vs " + short_num(max_residual));
  return r;
}

// ---------------------------------------------------------------- operator norms

OpNormCheckConfig OpNormCheckConfig::standard() {
  OpNormCheckConfig c;
  for (const char* p : {"s", "ell2", "ell1"}) c.sweeps.push_back(SweepConfig::standard(p));
  return c;
}

namespace {

// Small specs whose blocks fit the dense SVD.
std::vector<OscKernelSpec> svd_specs() {
  std::vector<OscKernelSpec> out;
  OscKernelSpec a;
  a.big_lambda = 64.0;
  a.s = 2;
  a.m = -2;
  out.push_back(a);
  OscKernelSpec b;
  b.phase = PhaseSpec::general(1.0, 0.5, 0.3, 1, 0);
  b.big_lambda = 8.0;
  b.s = 1;
  b.m = -1;
  out.push_back(b);
  OscKernelSpec c;
  c.big_lambda = 16.0;
  c.s = 3;
  c.ell2 = 2;
  c.ell1 = 4;
  out.push_back(c);
  return out;
}

}  // namespace

ExperimentReport opnorm_report(const OpNormCheckConfig& cfg) {
  const auto t0 = Clock::now();
  ExperimentReport r;
  r.id = "opnorm_decay";
  json sw = json::array();
  for (const auto& s : cfg.sweeps) sw.push_back(sweep_json(s));
  r.config_json = json{{"sweeps", sw},
                       {"svd_cross_check", cfg.svd_cross_check},
                       {"svd_max_dim", cfg.svd_max_dim},
                       {"svd_tol", cfg.svd_tol}}
                      .dump();
  for (const auto& s : cfg.sweeps) {
    const auto ts = Clock::now();
    DecayFit fit = run_sweep(s);
    const double thr = sweep_threshold(s.parameter);
    r.scalar("slope_" + s.parameter, fit.slope);
    r.scalar("seconds_" + s.parameter, since(ts));
    for (const auto& note : fit.exclusions()) r.warnings.push_back(s.parameter + ": " + note);
    std::ostringstream d;
    d << "slope " << short_num(fit.slope) << " vs " << short_num(thr) << " over " << fit.fitted() << " points";
    r.clause("slope in " + s.parameter, fit.slope <= thr, d.str());
    r.fits.push_back(std::move(fit));
  }
  if (cfg.svd_cross_check) {
    Table t{"opnorm_svd_check", {"case", "rows", "cols", "power_iteration", "dense_svd", "relative_error"}, {}};
    double worst = 0.0;
    std::size_t checked = 0;
    auto check = [&](const std::string& name, const Eigen::MatrixXcd& m) {
      if (static_cast<std::size_t>(std::max(m.rows(), m.cols())) > cfg.svd_max_dim) {
        r.warnings.push_back("svd check skips " + name + ": larger than svd_max_dim");
        return;
      }
      const OpNormResult pi = op_norm(m);
      const double ref = dense_spectral_norm(m);
      const double rel = ref > 0.0 ? std::abs(pi.value - ref) / ref : std::abs(pi.value);
      worst = std::max(worst, rel);
      ++checked;
      t.rows.push_back({name, std::to_string(m.rows()), std::to_string(m.cols()), fmt(pi.value), fmt(ref), fmt(rel)});
    };
    std::size_t idx = 0;
    for (const auto& spec : svd_specs()) {
      const auto blocks = build_osc_blocks(spec);
      for (std::size_t b = 0; b < blocks.size(); ++b)
        check("spec" + std::to_string(idx) + "_block" + std::to_string(b), blocks[b].l2_matrix());
      ++idx;
    }
    std::mt19937_64 rng(99);
    std::normal_distribution<double> nd;
    Eigen::MatrixXcd g(200, 200);
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = {nd(rng), nd(rng)};
    check("gaussian_200", g);
    r.tables.push_back(std::move(t));
    r.scalar("svd_max_relative_error", worst);
    r.clause("op_norm matches dense SVD", checked > 0 && worst <= cfg.svd_tol,
             std::to_string(checked) + " matrices, max relative error " + short_num(worst));
  }
  r.scalar("seconds", since(t0));
  return r;
}

// ---------------------------------------------------------------- counterexample

ExperimentReport counterexample_report(const CounterexampleRun& run) {
  const auto t0 = Clock::now();
  ExperimentReport r;
  r.id = "counterexample";
  const auto& b = run.base;
  r.config_json = json{{"m_lo", run.m_lo},
                       {"m_hi", run.m_hi},
                       {"p", b.p},
                       {"matrix", matrix_json(b.a)},
                       {"compare", run.compare},
                       {"comparison", matrix_json(run.comparison)},
                       {"x_cells", b.x_cells},
                       {"input_x_cells", b.input_x_cells},
                       {"cells_per_slab", b.cells_per_slab},
                       {"coarse", b.coarse},
                       {"theta_panels", b.theta_panels},
                       {"band", run.band},
                       {"comparison_growth", run.comparison_growth},
                       {"oracle_factor", run.oracle_factor}}
                      .dump();
  if (run.m_hi < run.m_lo) throw std::invalid_argument("counterexample: empty m range");
  Table t{"counterexample",
          {"matrix", "m", "delta", "ratio", "ratio_over_m^(1/p)", "oracle_ratio", "grid_over_oracle", "input_norm",
           "exact_input_norm", "output_cells", "seconds"},
          {}};
  auto sweep = [&](const Matrix2& a, const std::string& name) {
    std::vector<CounterexampleResult> out;
    for (int m = run.m_lo; m <= run.m_hi; ++m) {
      CounterexampleSpec s = b;
      s.m = m;
      s.delta.reset();
      s.a = a;
      Diagnostics diag;
      const CounterexampleResult res = divergence_experiment(s, &diag);
      for (auto& w : diag.warnings) r.warnings.push_back(name + ": " + w);
      t.rows.push_back({name, std::to_string(m), fmt(res.delta), fmt(res.ratio), fmt(res.normalized),
                        fmt(res.oracle_ratio), fmt(res.ratio / res.oracle_ratio), fmt(res.input_norm),
                        fmt(res.exact_input_norm), std::to_string(res.output_cells), fmt(res.seconds)});
      out.push_back(res);
    }
    return out;
  };
  const auto base = sweep(b.a, "A");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0, worst_oracle = 1.0;
  bool monotone = true;
  for (std::size_t i = 0; i < base.size(); ++i) {
    lo = std::min(lo, base[i].normalized);
    hi = std::max(hi, base[i].normalized);
    const double q = base[i].ratio / base[i].oracle_ratio;
    worst_oracle = std::max(worst_oracle, std::max(q, 1.0 / q));
    if (i > 0 && !(base[i].ratio > base[i - 1].ratio)) monotone = false;
  }
  r.scalar("band_ratio", hi / lo);
  r.scalar("worst_oracle_factor", worst_oracle);
  r.clause("ratio / m^(1/p) within band", hi / lo <= run.band,
           "max/min " + short_num(hi / lo) + " vs " + short_num(run.band));
  r.clause("ratio increases with m", monotone);
  const bool scalar_identity = b.a.a12 == 0.0 && b.a.a21 == 0.0 && b.a.a11 == b.a.a22 && b.a.a11 != 0.0;
  if (scalar_identity)
    r.clause("grid within factor of slab-union oracle", worst_oracle <= run.oracle_factor,
             "worst factor " + short_num(worst_oracle) + " vs " + short_num(run.oracle_factor));
  if (run.compare) {
    const auto cmp = sweep(run.comparison, "comparison");
    const double growth = cmp.back().ratio / cmp.front().ratio;
    r.scalar("comparison_growth", growth);
    r.clause("comparison ratio stays flat", growth <= run.comparison_growth,
             "R(m_hi)/R(m_lo) " + short_num(growth) + " vs " + short_num(run.comparison_growth));
  }
  r.tables.push_back(std::move(t));
  r.scalar("seconds", since(t0));
  return r;
}

// ---------------------------------------------------------------- group Fourier transform

ExperimentReport gft_report(const GftCheckConfig& cfg, double limit) {
  const auto t0 = Clock::now();
  ExperimentReport r;
  r.id = "gft_check";
  r.config_json = json{{"half_width", cfg.half_width},
                       {"cells", cfg.cells},
                       {"grid", {{"lo", cfg.grid.lo}, {"hi", cfg.grid.hi}, {"n", cfg.grid.n}}},
                       {"per_octave", cfg.per_octave},
                       {"lambda", cfg.lambda},
                       {"limit", limit}}
                      .dump();
  Diagnostics d0, d1;
  const GftCheckConfig fine = refine(cfg);
  const GftCheckResult a = gft_check(cfg, &d0);
  const GftCheckResult b = gft_check(fine, &d1);
  for (auto& w : d0.warnings) r.warnings.push_back("default: " + w);
  for (auto& w : d1.warnings) r.warnings.push_back("refined: " + w);
  Table t{"gft_check",
          {"level", "cells", "grid_n", "per_octave", "plancherel_lhs", "plancherel_rhs", "plancherel_discrepancy",
           "near_zero_estimate", "convolution", "convolution_swapped"},
          {}};
  auto row = [&](const char* name, const GftCheckConfig& c, const GftCheckResult& g) {
    t.rows.push_back({name, std::to_string(c.cells), std::to_string(c.grid.n), std::to_string(c.per_octave),
                      fmt(g.plancherel.lhs), fmt(g.plancherel.rhs), fmt(g.plancherel.relative_discrepancy()),
                      fmt(g.plancherel.near_zero_estimate), fmt(g.convolution), fmt(g.convolution_swapped)});
  };
  row("default", cfg, a);
  row("refined", fine, b);
  r.tables.push_back(std::move(t));
  const double pa = a.plancherel.relative_discrepancy(), pb = b.plancherel.relative_discrepancy();
  const double ca = std::max(a.convolution, a.convolution_swapped);
  const double cb = std::max(b.convolution, b.convolution_swapped);
  r.scalar("plancherel_discrepancy", pa);
  r.scalar("plancherel_discrepancy_refined", pb);
  r.scalar("convolution_residual", ca);
  r.scalar("convolution_residual_refined", cb);
  r.scalar("seconds", since(t0));
  r.clause("Plancherel discrepancy", pa <= limit, short_num(pa) + " vs " + short_num(limit));
  r.clause("convolution residual", ca <= limit, short_num(ca) + " vs " + short_num(limit));
  r.clause("Plancherel decreases under refinement", pb < pa, short_num(pa) + " -> " + short_num(pb));
  r.clause("convolution decreases under refinement",
           b.convolution < a.convolution && b.convolution_swapped < a.convolution_swapped,
           short_num(ca) + " -> " + short_num(cb));
  return r;
}

// ---------------------------------------------------------------- Littlewood-Paley

ExperimentReport lp_report(const LpCheckConfig& cfg) {
  const auto t0 = Clock::now();
  ExperimentReport r;
  r.id = "lp_check";
  r.config_json = json{{"telescoping_levels", cfg.telescoping_levels},
                       {"cells", cfg.cells},
                       {"reconstruction_levels", cfg.reconstruction_levels},
                       {"seed", cfg.seed}}
                      .dump();
  const auto [inside, outside] = telescoping_errors(cfg.telescoping_levels);
  const double beta_err = beta_telescoping_error(cfg.telescoping_levels);
  const auto [chain, passes] = orthogonality_residuals(cfg.seed);
  r.scalar("partition_error", inside);
  r.scalar("partition_remainder_error", outside);
  r.scalar("beta_partition_error", beta_err);
  r.scalar("orthogonality_single_transform", chain);
  r.scalar("orthogonality_two_passes", passes);
  r.clause("phi partition telescopes", inside < 1e-14 && outside < 1e-14,
           short_num(inside) + ", " + short_num(outside));
  r.clause("beta partition telescopes", beta_err < 1e-14, short_num(beta_err));
  r.clause("P1 projections with |l - l'| >= 2 compose to zero", chain == 0.0, short_num(chain));

  // reconstruction and the two routes of lp_project on a smooth bump
  const std::size_t n = cfg.cells;
  const Box3 box{{-3.0, -3.0, -6.0}, {3.0, 3.0, 6.0}};
  const GridFunction3 f = sample(smooth_test_bump, box, {n, n, 2 * n});
  const double tol = interpolation_tolerance(f);
  const int L = cfg.reconstruction_levels;
  Table t{"lp_check", {"axis", "reconstruction_error", "route_difference", "interpolation_tolerance"}, {}};
  double worst_rec = 0.0, worst_route = 0.0;
  for (int nu : {1, 2}) {
    Diagnostics diag;
    GridFunction3 sum(f.axes());
    for (int j = -L; j <= L; ++j) sum += lp_project(f, j, nu, LpRoute::shear_multiplier, &diag);
    const LpRemainders rem = lp_remainders(f, L, nu, &diag);
    sum += rem.low;
    sum += rem.high;
    const auto all = [](double, double, double) { return true; };
    const double rec = sup_difference(sum, f, all);
    double route = 0.0;
    for (int j : {-1, 0}) {
      const GridFunction3 a = lp_project(f, j, nu, LpRoute::shear_multiplier);
      const GridFunction3 b = lp_project(f, j, nu, LpRoute::direct_quadrature);
      route = std::max(route, sup_difference(a, b, all));
    }
    worst_rec = std::max(worst_rec, rec);
    worst_route = std::max(worst_route, route);
    t.rows.push_back({std::to_string(nu), fmt(rec), fmt(route), fmt(tol)});
    for (auto& w : diag.warnings) r.warnings.push_back("axis " + std::to_string(nu) + ": " + w);
  }
  r.tables.push_back(std::move(t));
  r.scalar("reconstruction_error", worst_rec);
  r.scalar("route_difference", worst_route);
  r.scalar("interpolation_tolerance", tol);
  r.clause("telescoped projections reconstruct f", worst_rec <= 10.0 * tol,
           short_num(worst_rec) + " vs 10 x " + short_num(tol));
  r.clause("shear-multiplier and direct routes agree", worst_route <= 10.0 * tol,
           short_num(worst_route) + " vs 10 x " + short_num(tol));
  r.scalar("seconds", since(t0));
  return r;
}

// ---------------------------------------------------------------- structural identities

ExperimentReport structural_report(const StructuralConfig& cfg) {
  const auto t0 = Clock::now();
  ExperimentReport r;
  r.id = "structural";
  r.config_json = json{{"seed", cfg.seed},
                       {"samples", cfg.samples},
                       {"telescoping_tol", cfg.telescoping_tol},
                       {"min_order", cfg.min_order},
                       {"transport_factor", cfg.transport_factor}}
                      .dump();
  std::mt19937_64 rng(cfg.seed);

  // decomposition
  double ulps = 0.0;
  bool shape = true;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const Matrix2 a = random_matrix(rng, i % 2 ? 1e3 : 1.0);
    ulps = std::max(ulps, decomposition_ulps(a));
    shape = shape && decomposition_shape_exact(a);
  }
  r.scalar("decomposition_max_ulps", ulps);
  r.clause("decomposition exact", shape && ulps <= 1.0, "max error " + short_num(ulps) + " ulp");

  // telescoping and orthogonality
  const auto [inside, outside] = telescoping_errors(10);
  const double beta_err = beta_telescoping_error(10);
  const double tele = std::max({inside, outside, beta_err});
  r.scalar("telescoping_error", tele);
  r.clause("cutoff telescoping", tele < cfg.telescoping_tol, short_num(tele));
  const auto [chain, passes] = orthogonality_residuals(cfg.seed);
  r.scalar("orthogonality_residual", chain);
  r.scalar("orthogonality_two_passes", passes);
  r.clause("P1 orthogonality exact", chain == 0.0, short_num(chain));

  // Hessian finite differences
  std::uniform_real_distribution<double> coef(-1.0, 1.0), pos(-0.6, 0.6), off(-0.6, 0.6);
  double err_h[2] = {0, 0}, err_h2[2] = {0, 0};
  double min_point = std::numeric_limits<double>::infinity();
  const double h = 0.02;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const PhaseSpec p = i % 4 == 0 ? PhaseSpec::circle()
                                   : PhaseSpec::general(coef(rng), coef(rng), coef(rng), static_cast<int>(i % 3) - 1,
                                                        static_cast<int>(i % 2));
    const double x = pos(rng);
    const double y = x - off(rng);
    auto mixed = [&](double hh) {
      return (phase_eval(p, x + hh, y + hh) - phase_eval(p, x + hh, y - hh) - phase_eval(p, x - hh, y + hh) +
              phase_eval(p, x - hh, y - hh)) /
             (4.0 * hh * hh);
    };
    const double hx = phase_hessian(p, x, y);
    err_h[0] += std::abs(mixed(h) - hx);
    err_h2[0] += std::abs(mixed(0.5 * h) - hx);
    if (p.kind == PhaseSpec::Kind::general) {
      auto dy2 = [&](double hh) {
        return (phase_hessian(p, x, y + hh) - 2.0 * hx + phase_hessian(p, x, y - hh)) / (hh * hh);
      };
      const double d = phase_hessian_dy2(p, x, y);
      err_h[1] += std::abs(dy2(h) - d);
      err_h2[1] += std::abs(dy2(0.5 * h) - d);
    }
    const HessianOrders o = hessian_fd_orders(p, x, y, h);
    min_point = std::min(min_point, p.kind == PhaseSpec::Kind::general ? std::min(o.hessian, o.hessian_dy2) : o.hessian);
  }
  const double order_h = std::log2(err_h[0] / err_h2[0]);
  const double order_d = std::log2(err_h[1] / err_h2[1]);
  r.scalar("hessian_fd_order", order_h);
  r.scalar("hessian_dy2_fd_order", order_d);
  r.scalar("min_pointwise_order", min_point);
  r.clause("Hessian finite-difference order", std::min(order_h, order_d) >= cfg.min_order,
           short_num(order_h) + ", " + short_num(order_d) + " vs " + short_num(cfg.min_order));

  // conjugated route of the averages
  Table t{"transport_vs_direct", {"a11", "a12", "a21", "a22", "sup_difference", "tolerance"}, {}};
  double worst_ratio = 0.0;
  std::uniform_real_distribution<double> ent(-1.0, 1.0);
  const std::vector<Matrix2> mats{Matrix2::identity(), Matrix2::heisenberg_j(),
                                  {ent(rng), ent(rng), ent(rng), ent(rng)}, {ent(rng), ent(rng), ent(rng), ent(rng)}};
  for (const auto& a : mats) {
    const RouteComparison c = compare_routes(a, {1.0, 0.5}, 32);
    t.rows.push_back({fmt(a.a11), fmt(a.a12), fmt(a.a21), fmt(a.a22), fmt(c.sup_difference), fmt(c.tolerance)});
    worst_ratio = std::max(worst_ratio, c.sup_difference / c.tolerance);
  }
  r.tables.push_back(std::move(t));
  r.scalar("transport_worst_ratio_to_tolerance", worst_ratio);
  r.clause("conjugated route matches direct average", worst_ratio <= cfg.transport_factor,
           "worst " + short_num(worst_ratio) + " x tolerance vs " + short_num(cfg.transport_factor));
  r.scalar("seconds", since(t0));
  return r;
}

}  // namespace heislac
