// heislac: command-line runner for the experiments.
//
//   heislac <subcommand> [--config run.json] [flags] [--out DIR]
//
// Flags override config keys of the same name (dashes become underscores).
// Exit status: 0 pass, 2 acceptance failure, 1 usage/config error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "heislac/averages.hpp"
#include "heislac/errors.hpp"
#include "heislac/grid.hpp"
#include "heislac/runs.hpp"

using nlohmann::json;
using namespace heislac;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Config document with unknown-key detection.
class Config {
 public:
  void load(const std::string& path) {
    if (path.empty()) return;
    std::ifstream is(path);
    if (!is) throw UsageError("cannot open config " + path);
    try {
      doc_ = json::parse(is);
    } catch (const json::parse_error& e) {
      throw UsageError("malformed config " + path + ": " + e.what());
    }
    if (!doc_.is_object()) throw UsageError("config must be a JSON object");
  }

  template <class T>
  void get(const std::string& key, T& out) {
    seen_.insert(key);
    if (!doc_.contains(key)) return;
    try {
      out = doc_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw UsageError("config key '" + key + "': " + e.what());
    }
  }

  template <class T>
  void get(const std::string& key, std::optional<T>& out) {
    seen_.insert(key);
    if (!doc_.contains(key) || doc_.at(key).is_null()) return;
    T v{};
    get(key, v);
    out = v;
  }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    static const json null;
    return doc_.contains(key) ? doc_.at(key) : null;
  }

  void check_unknown() const {
    for (const auto& [k, v] : doc_.items())
      if (!seen_.count(k)) throw UsageError("unknown config key '" + k + "'");
  }

 private:
  json doc_ = json::object();
  std::set<std::string> seen_;
};

Matrix2 parse_matrix(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("matrix entries must be numbers: '" + s + "'");
    }
  }
  if (v.size() != 4) throw UsageError("matrix needs 4 comma-separated entries (row-major)");
  return {v[0], v[1], v[2], v[3]};
}

Matrix2 matrix_from(const json& j) {
  if (j.is_string()) return parse_matrix(j.get<std::string>());
  if (!j.is_array() || j.size() != 4) throw UsageError("matrix must be 4 row-major entries");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto c = s.find(':');
  if (c == std::string::npos) throw UsageError("range must be lo:hi");
  try {
    return {std::stoi(s.substr(0, c)), std::stoi(s.substr(c + 1))};
  } catch (const std::exception&) {
    throw UsageError("range must be lo:hi with integers, got '" + s + "'");
  }
}

// Common tail of every subcommand.
int finish(const ExperimentReport& r, const std::string& out) {
  if (!out.empty()) r.write(out);
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << r.summary() << "\n";
  return r.passed() ? 0 : 2;
}

struct Common {
  std::string config;
  std::string out;
};

void add_common(CLI::App* sub, Common& c, const std::string& name) {
  c.out = "heislac_out/" + name;
  sub->add_option("--config", c.config, "JSON config file");
  sub->add_option("--out", c.out, "output directory for report.json and CSV files (empty: none)");
}

template <class T>
void overlay(std::optional<T>& flag, T& target) {
  if (flag) target = *flag;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heislac: lacunary maximal operators, oscillatory integrals and the group Fourier transform"};
  app.require_subcommand(1);
  std::function<int()> action;

  // classify
  Common c_cls;
  std::optional<std::string> cls_matrix;
  std::optional<double> cls_tol;
  bool cls_suite = false;
  auto* cls = app.add_subcommand("classify", "boundedness verdict for a matrix, or the numeric dichotomy scan");
  add_common(cls, c_cls, "classify");
  cls->add_option("--matrix", cls_matrix, "a11,a12,a21,a22");
  cls->add_option("--tol", cls_tol, "relative tolerance");
  cls->add_flag("--suite", cls_suite, "scan the curated matrix suite against classify");
  cls->callback([&] {
    action = [&] {
      Config cfg;
      cfg.load(c_cls.config);
      double tol = kDefaultClassifyTol;
      cfg.get("tol", tol);
      overlay(cls_tol, tol);
      bool suite = cls_suite;
      cfg.get("suite", suite);
      suite = suite || cls_suite;
      DichotomyConfig dc;
      cfg.get("k_max", dc.k_max);
      cfg.get("j_lo", dc.j_lo);
      cfg.get("j_hi", dc.j_hi);
      cfg.get("degenerate_slope", dc.degenerate_slope);
      std::optional<Matrix2> m;
      if (!cfg.raw("matrix").is_null()) m = matrix_from(cfg.raw("matrix"));
      if (cls_matrix) m = parse_matrix(*cls_matrix);
      std::vector<LabeledMatrix> list;
      for (const auto& e : cfg.raw("matrices")) list.push_back({e.at("label").get<std::string>(), matrix_from(e.at("matrix"))});
      cfg.check_unknown();
      if (suite || !list.empty()) {
        const ExperimentReport r = dichotomy_report(list.empty() ? curated_matrix_suite() : list, dc);
        return finish(r, c_cls.out);
      }
      if (!m) throw UsageError("classify needs --matrix or --suite");
      const ExperimentReport r = classify_report(*m, tol);
      if (!c_cls.out.empty()) r.write(c_cls.out);
      std::cout << classify(*m, tol).summary() << "\n";
      return r.passed() ? 0 : 2;
    };
  });

  // average / maxop
  struct AverageOpts {
    Common common;
    std::optional<std::string> matrix;
    std::optional<double> t1, t2, half_width, height;
    std::optional<int> k_lo, k_hi, k2_lo, k2_hi;
    std::optional<std::size_t> cells, nodes;
    std::optional<std::string> route, mode;
  };
  AverageOpts avg_o, max_o;
  auto add_avg = [](CLI::App* sub, AverageOpts& o, const std::string& name) {
    add_common(sub, o.common, name);
    sub->add_option("--matrix", o.matrix, "a11,a12,a21,a22");
    sub->add_option("--half-width", o.half_width, "box [-w, w]^2 x [-height, height]");
    sub->add_option("--height", o.height, "half height of the box in x3");
    sub->add_option("--cells", o.cells, "cells per axis");
    sub->add_option("--nodes", o.nodes, "theta nodes (>= 64)");
  };
  auto* avg = app.add_subcommand("average", "E^A_{t1,t2} of a smooth bump by the direct or conjugated route");
  add_avg(avg, avg_o, "average");
  avg->add_option("--t1", avg_o.t1);
  avg->add_option("--t2", avg_o.t2);
  avg->add_option("--route", avg_o.route, "direct | transport | both");
  auto* mx = app.add_subcommand("maxop", "lacunary maximal function of a smooth bump");
  add_avg(mx, max_o, "maxop");
  mx->add_option("--mode", max_o.mode, "circular | elliptic");
  mx->add_option("--k-lo", max_o.k_lo);
  mx->add_option("--k-hi", max_o.k_hi);
  mx->add_option("--k2-lo", max_o.k2_lo);
  mx->add_option("--k2-hi", max_o.k2_hi);

  struct AvgSetup {
    Matrix2 a = Matrix2::identity();
    double half_width = 4.0, height = 4.0;
    std::size_t cells = 32, nodes = kDefaultThetaNodes;
  };
  auto read_avg = [](Config& cfg, AverageOpts& o) {
    AvgSetup s;
    if (!cfg.raw("matrix").is_null()) s.a = matrix_from(cfg.raw("matrix"));
    if (o.matrix) s.a = parse_matrix(*o.matrix);
    cfg.get("half_width", s.half_width);
    cfg.get("height", s.height);
    cfg.get("cells", s.cells);
    cfg.get("nodes", s.nodes);
    overlay(o.half_width, s.half_width);
    overlay(o.height, s.height);
    overlay(o.cells, s.cells);
    overlay(o.nodes, s.nodes);
    return s;
  };
  auto setup_json = [](const AvgSetup& s) {
    return json{{"matrix", {s.a.a11, s.a.a12, s.a.a21, s.a.a22}},
                {"half_width", s.half_width},
                {"height", s.height},
                {"cells", s.cells},
                {"nodes", s.nodes}};
  };

  avg->callback([&] {
    action = [&] {
      Config cfg;
      cfg.load(avg_o.common.config);
      AvgSetup s = read_avg(cfg, avg_o);
      double t1 = 1.0, t2 = 1.0;
      std::string route = "both";
      cfg.get("t1", t1);
      cfg.get("t2", t2);
      cfg.get("route", route);
      overlay(avg_o.t1, t1);
      overlay(avg_o.t2, t2);
      overlay(avg_o.route, route);
      cfg.check_unknown();
      if (route != "direct" && route != "transport" && route != "both") throw UsageError("route must be direct, transport or both");
      const Box3 box{{-s.half_width, -s.half_width, -s.height}, {s.half_width, s.half_width, s.height}};
      const GridFunction3 f = sample(smooth_test_bump, box, {s.cells, s.cells, s.cells});
      const auto q = ThetaQuadrature::trapezoid(s.nodes);
      const ScaleParams sc{t1, t2};
      ExperimentReport r;
      r.id = "average";
      json cj = setup_json(s);
      cj["t1"] = t1;
      cj["t2"] = t2;
      cj["route"] = route;
      r.config_json = cj.dump();
      Diagnostics diag;
      const AverageResult d = elliptic_average(f, s.a, sc, q, false, &diag);
      r.scalar("invalid_cells", static_cast<double>(d.invalid_count));
      r.scalar("l2_norm_direct", lp_norm(d.value, 2.0));
      const double tol = interpolation_tolerance(d.value);
      r.scalar("interpolation_tolerance", tol);
      // int E f = 2 pi int f when every orbit stays in the box
      const double rel = std::abs(mass(d.value) - kTwoPi * mass(f)) / (kTwoPi * mass(f));
      r.scalar("mass_identity_relative_error", rel);
      if (d.invalid_count == 0) r.clause("mass identity", rel <= 1e-3, std::to_string(rel));
      if (route != "direct") {
        const GridFunction3 t = transport_average(f, s.a, sc, q, &diag);
        const auto dv = d.value.samples();
        const auto tv = t.samples();
        double diff = 0.0;
        for (std::size_t n = 0; n < dv.size(); ++n)
          if (d.valid[n]) diff = std::max(diff, std::abs(dv[n] - tv[n]));
        r.scalar("route_sup_difference", diff);
        r.clause("routes agree", diff <= 10.0 * tol, std::to_string(diff) + " vs 10 x " + std::to_string(tol));
        if (!avg_o.common.out.empty() && route == "transport") {
          std::filesystem::create_directories(avg_o.common.out);
          write_grid(std::filesystem::path(avg_o.common.out) / "average.grid", t);
        }
      }
      if (!avg_o.common.out.empty() && route != "transport") {
        std::filesystem::create_directories(avg_o.common.out);
        write_grid(std::filesystem::path(avg_o.common.out) / "average.grid", d.value);
      }
      r.warnings = diag.warnings;
      return finish(r, avg_o.common.out);
    };
  });

  mx->callback([&] {
    action = [&] {
      Config cfg;
      cfg.load(max_o.common.config);
      AvgSetup s = read_avg(cfg, max_o);
      std::string mode = "circular";
      int k_lo = -2, k_hi = 0, k2_lo = -2, k2_hi = 0;
      cfg.get("mode", mode);
      cfg.get("k_lo", k_lo);
      cfg.get("k_hi", k_hi);
      cfg.get("k2_lo", k2_lo);
      cfg.get("k2_hi", k2_hi);
      overlay(max_o.mode, mode);
      overlay(max_o.k_lo, k_lo);
      overlay(max_o.k_hi, k_hi);
      overlay(max_o.k2_lo, k2_lo);
      overlay(max_o.k2_hi, k2_hi);
      cfg.check_unknown();
      LacunaryRange range;
      if (mode == "circular")
        range = LacunaryRange::circular(k_lo, k_hi);
      else if (mode == "elliptic")
        range = LacunaryRange::elliptic(k_lo, k_hi, k2_lo, k2_hi);
      else
        throw UsageError("mode must be circular or elliptic");
      const Box3 box{{-s.half_width, -s.half_width, -s.height}, {s.half_width, s.half_width, s.height}};
      const GridFunction3 f = sample(smooth_test_bump, box, {s.cells, s.cells, s.cells});
      const auto q = ThetaQuadrature::trapezoid(s.nodes);
      ExperimentReport r;
      r.id = "maxop";
      json cj = setup_json(s);
      cj.update({{"mode", mode}, {"k_lo", k_lo}, {"k_hi", k_hi}, {"k2_lo", k2_lo}, {"k2_hi", k2_hi}});
      r.config_json = cj.dump();
      Diagnostics diag;
      const AverageResult m = lacunary_max(f, s.a, range, q, false, &diag);
      r.scalar("pairs", static_cast<double>(range.pairs.size()));
      r.scalar("invalid_cells", static_cast<double>(m.invalid_count));
      r.scalar("l2_norm_input", lp_norm(f, 2.0));
      r.scalar("l2_norm_max", lp_norm(m.value, 2.0));
      r.scalar("sup_max", lp_norm(m.value, std::numeric_limits<double>::infinity()));
      // the maximal function dominates each member average
      double worst = 0.0;
      for (const auto& [k1, k2] : range.pairs) {
        const AverageResult e = elliptic_average(f, s.a, ScaleParams::dyadic(k1, k2), q, false);
        const auto mv = m.value.samples();
        const auto ev = e.value.samples();
        for (std::size_t n = 0; n < mv.size(); ++n) worst = std::max(worst, std::abs(ev[n]) - mv[n]);
      }
      r.clause("maximal function dominates each average", worst <= 0.0, std::to_string(worst));
      if (!max_o.common.out.empty()) {
        std::filesystem::create_directories(max_o.common.out);
        write_grid(std::filesystem::path(max_o.common.out) / "maxop.grid", m.value);
      }
      r.warnings = diag.warnings;
      return finish(r, max_o.common.out);
    };
  });

  // counterexample
  Common c_ce;
  std::optional<std::string> ce_range, ce_matrix, ce_comparison;
  std::optional<double> ce_p;
  std::optional<std::size_t> ce_xcells, ce_panels;
  bool ce_no_compare = false;
  auto* ce = app.add_subcommand("counterexample", "ratio law of the lacunary circular maximal function on h_delta");
  add_common(ce, c_ce, "counterexample");
  ce->add_option("--m-range", ce_range, "lo:hi (default 2:6)");
  ce->add_option("--matrix", ce_matrix, "a11,a12,a21,a22 (default identity)");
  ce->add_option("--comparison", ce_comparison, "comparison matrix (default J)");
  ce->add_option("--p", ce_p, "exponent, p >= 1");
  ce->add_option("--x-cells", ce_xcells, "output cells per x-axis");
  ce->add_option("--theta-panels", ce_panels);
  ce->add_flag("--no-compare", ce_no_compare, "skip the comparison matrix");
  ce->callback([&] {
    action = [&] {
      Config cfg;
      cfg.load(c_ce.config);
      CounterexampleRun run;
      cfg.get("m_lo", run.m_lo);
      cfg.get("m_hi", run.m_hi);
      cfg.get("p", run.base.p);
      cfg.get("x_cells", run.base.x_cells);
      cfg.get("input_x_cells", run.base.input_x_cells);
      cfg.get("cells_per_slab", run.base.cells_per_slab);
      cfg.get("coarse", run.base.coarse);
      cfg.get("theta_panels", run.base.theta_panels);
      cfg.get("compare", run.compare);
      cfg.get("band", run.band);
      cfg.get("comparison_growth", run.comparison_growth);
      cfg.get("oracle_factor", run.oracle_factor);
      if (!cfg.raw("matrix").is_null()) run.base.a = matrix_from(cfg.raw("matrix"));
      if (!cfg.raw("comparison").is_null()) run.comparison = matrix_from(cfg.raw("comparison"));
      cfg.check_unknown();
      if (ce_range) std::tie(run.m_lo, run.m_hi) = parse_range(*ce_range);
      if (ce_matrix) run.base.a = parse_matrix(*ce_matrix);
      if (ce_comparison) run.comparison = parse_matrix(*ce_comparison);
      overlay(ce_p, run.base.p);
      overlay(ce_xcells, run.base.x_cells);
      overlay(ce_panels, run.base.theta_panels);
      if (ce_no_compare) run.compare = false;
      return finish(counterexample_report(run), c_ce.out);
    };
  });

  // fourier-decay
  Common c_fd;
  std::optional<double> fd_b, fd_d, fd_e;
  std::optional<int> fd_k1, fd_k2;
  std::optional<std::string> fd_range;
  std::optional<std::size_t> fd_dirs;
  std::optional<std::uint64_t> fd_seed;
  bool fd_envelope = false;
  auto* fd = app.add_subcommand("fourier-decay", "decay of the Fourier transform of the curve measure");
  add_common(fd, c_fd, "fourier_decay");
  fd->add_option("--b", fd_b);
  fd->add_option("--d", fd_d);
  fd->add_option("--e", fd_e);
  fd->add_option("--k1", fd_k1);
  fd->add_option("--k2", fd_k2);
  fd->add_option("--range", fd_range, "j range lo:hi for |xi3| or |eta| = 2^j (default 4:12)");
  fd->add_flag("--envelope", fd_envelope, "max over seeded random directions of the scalar integral");
  fd->add_option("--directions", fd_dirs);
  fd->add_option("--seed", fd_seed);
  fd->callback([&] {
    action = [&] {
      Config cfg;
      cfg.load(c_fd.config);
      bool envelope = fd_envelope;
      cfg.get("envelope", envelope);
      envelope = envelope || fd_envelope;
      MeasureDecayConfig mc;
      EnvelopeConfig ec;
      cfg.get("b", mc.b);
      cfg.get("d", mc.d);
      cfg.get("e", mc.e);
      cfg.get("k1", mc.k1);
      cfg.get("k2", mc.k2);
      cfg.get("tol", mc.tol);
      cfg.get("j_lo", mc.j_lo);
      cfg.get("j_hi", mc.j_hi);
      cfg.get("directions", ec.directions);
      cfg.get("seed", ec.seed);
      double max_slope = -0.22, max_residual = 0.15;
      cfg.get("max_slope", max_slope);
      cfg.get("max_residual", max_residual);
      cfg.check_unknown();
      overlay(fd_b, mc.b);
      overlay(fd_d, mc.d);
      overlay(fd_e, mc.e);
      overlay(fd_k1, mc.k1);
      overlay(fd_k2, mc.k2);
      if (fd_range) std::tie(mc.j_lo, mc.j_hi) = parse_range(*fd_range);
      overlay(fd_dirs, ec.directions);
      overlay(fd_seed, ec.seed);
      if (envelope) {
        ec.j_lo = mc.j_lo;
        ec.j_hi = mc.j_hi;
        return finish(envelope_report(ec, max_slope, max_residual), c_fd.out);
      }
      return finish(measure_decay_report(mc), c_fd.out);
    };
  });

  // opnorm-decay
  Common c_op;
  std::optional<std::string> op_sweep, op_range;
  std::optional<double> op_lambda, op_ppp;
  std::optional<int> op_s, op_m, op_ell1, op_ell2;
  bool op_no_svd = false;
  auto* op = app.add_subcommand("opnorm-decay", "operator-norm decay of the oscillatory building blocks");
  add_common(op, c_op, "opnorm_decay");
  op->add_option("--sweep", op_sweep, "s | ell1 | ell2 | all (default all)");
  op->add_option("--range", op_range, "lo:hi of the swept parameter");
  op->add_option("--lambda", op_lambda, "lambda 2^{k1+k2}");
  op->add_option("--s", op_s);
  op->add_option("--m", op_m);
  op->add_option("--ell1", op_ell1);
  op->add_option("--ell2", op_ell2);
  op->add_option("--points-per-period", op_ppp);
  op->add_flag("--no-svd", op_no_svd, "skip the dense singular-value cross-check");
  op->callback([&] {
    action = [&] {
      Config cfg;
      cfg.load(c_op.config);
      std::string which = "all";
      cfg.get("sweep", which);
      overlay(op_sweep, which);
      OpNormCheckConfig oc;
      cfg.get("svd_cross_check", oc.svd_cross_check);
      cfg.get("svd_max_dim", oc.svd_max_dim);
      cfg.get("svd_tol", oc.svd_tol);
      if (op_no_svd) oc.svd_cross_check = false;
      std::vector<std::string> params;
      if (which == "all")
        params = {"s", "ell2", "ell1"};
      else if (which == "s" || which == "ell1" || which == "ell2")
        params = {which};
      else
        throw UsageError("sweep must be s, ell1, ell2 or all");
      std::optional<int> lo, hi, s, m, e1, e2;
      std::optional<double> lambda, ppp;
      cfg.get("lo", lo);
      cfg.get("hi", hi);
      cfg.get("s", s);
      cfg.get("m", m);
      cfg.get("ell1", e1);
      cfg.get("ell2", e2);
      cfg.get("big_lambda", lambda);
      cfg.get("points_per_period", ppp);
      cfg.check_unknown();
      if (op_range) {
        const auto [a, b] = parse_range(*op_range);
        lo = a;
        hi = b;
      }
      if (op_s) s = op_s;
      if (op_m) m = op_m;
      if (op_ell1) e1 = op_ell1;
      if (op_ell2) e2 = op_ell2;
      if (op_lambda) lambda = op_lambda;
      if (op_ppp) ppp = op_ppp;
      for (const auto& p : params) {
        SweepConfig sc = SweepConfig::standard(p);
        if (lo) sc.lo = *lo;
        if (hi) sc.hi = *hi;
        if (s && p != "s") sc.s = *s;
        if (m) sc.m = m;
        if (e1 && p != "ell1") sc.ell1 = e1;
        if (e2 && p != "ell2") sc.ell2 = e2;
        if (lambda) sc.big_lambda = *lambda;
        if (ppp) sc.grid.points_per_period = *ppp;
        oc.sweeps.push_back(sc);
      }
      return finish(opnorm_report(oc), c_op.out);
    };
  });

  // gft-check
  Common c_gft;
  std::optional<std::size_t> g_cells, g_n, g_po;
  std::optional<double> g_lambda, g_limit;
  auto* gf = app.add_subcommand("gft-check", "Plancherel and convolution identities of the group Fourier transform");
  add_common(gf, c_gft, "gft_check");
  gf->add_option("--cells", g_cells, "cells per axis of the test functions");
  gf->add_option("--grid-n", g_n, "points of the representation grid");
  gf->add_option("--per-octave", g_po, "lambda nodes per octave");
  gf->add_option("--lambda", g_lambda, "lambda of the convolution identity");
  gf->add_option("--limit", g_limit, "acceptance limit for both identities");
  gf->callback([&] {
    action = [&] {
      Config cfg;
      cfg.load(c_gft.config);
      GftCheckConfig gc;
      double limit = 0.05;
      cfg.get("half_width", gc.half_width);
      cfg.get("cells", gc.cells);
      cfg.get("grid_n", gc.grid.n);
      cfg.get("grid_lo", gc.grid.lo);
      cfg.get("grid_hi", gc.grid.hi);
      cfg.get("per_octave", gc.per_octave);
      cfg.get("lambda", gc.lambda);
      cfg.get("limit", limit);
      cfg.check_unknown();
      overlay(g_cells, gc.cells);
      overlay(g_n, gc.grid.n);
      overlay(g_po, gc.per_octave);
      overlay(g_lambda, gc.lambda);
      overlay(g_limit, limit);
      return finish(gft_report(gc, limit), c_gft.out);
    };
  });

  // lp-check
  Common c_lp;
  std::optional<int> lp_levels, lp_rec;
  std::optional<std::size_t> lp_cells;
  auto* lp = app.add_subcommand("lp-check", "Littlewood-Paley telescoping, orthogonality and route agreement");
  add_common(lp, c_lp, "lp_check");
  lp->add_option("--levels", lp_levels, "telescoping levels L");
  lp->add_option("--cells", lp_cells, "cells per x-axis of the test function");
  lp->add_option("--reconstruction-levels", lp_rec);
  lp->callback([&] {
    action = [&] {
      Config cfg;
      cfg.load(c_lp.config);
      LpCheckConfig lc;
      cfg.get("telescoping_levels", lc.telescoping_levels);
      cfg.get("cells", lc.cells);
      cfg.get("reconstruction_levels", lc.reconstruction_levels);
      cfg.get("seed", lc.seed);
      cfg.check_unknown();
      overlay(lp_levels, lc.telescoping_levels);
      overlay(lp_cells, lc.cells);
      overlay(lp_rec, lc.reconstruction_levels);
      return finish(lp_report(lc), c_lp.out);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ResolutionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 1;
  }
}
