#include <cmath>
#include <numbers>
#include <sstream>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "golden.hpp"
#include "heislac/cutoffs.hpp"
#include "heislac/decay.hpp"
#include "heislac/errors.hpp"
#include "heislac/experiments.hpp"
#include "heislac/fft.hpp"
#include "heislac/numerics.hpp"
#include "heislac/op_norm.hpp"
#include "heislac/osc_operator.hpp"
#include "heislac/phase.hpp"
#include "heislac/runs.hpp"
#include "heislac/scalar_osc.hpp"
#include "heislac/van_der_corput.hpp"

namespace heislac {
namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------- phase

TEST(Phase, CircleExamples) {
  const auto c = PhaseSpec::circle();
  EXPECT_DOUBLE_EQ(phase_eval(c, 0.2, 0.2), 0.4);
  EXPECT_DOUBLE_EQ(phase_hessian(c, 0.2, 0.2), 0.4);
  EXPECT_NEAR(phase_eval(c, 0.3, 0.1), 0.4 * std::sqrt(0.96), 1e-15);
}

TEST(Phase, GeneralWithZeroCoefficientsIsCircle) {
  const auto c = PhaseSpec::circle();
  const auto g = PhaseSpec::general(0, 0, 0, 3, -2);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> y(-1, 1), u(-0.75, 0.75);
  for (int n = 0; n < 200; ++n) {
    const double b = y(rng), a = b + u(rng);
    EXPECT_EQ(phase_eval(g, a, b), phase_eval(c, a, b));
    EXPECT_EQ(phase_dx(g, a, b), phase_dx(c, a, b));
    EXPECT_EQ(phase_dy(g, a, b), phase_dy(c, a, b));
    EXPECT_EQ(phase_hessian(g, a, b), phase_hessian(c, a, b));
  }
}

TEST(Phase, FirstDerivativesMatchDifferences) {
  const auto g = PhaseSpec::general(0.7, -1.2, 0.4, 1, 2);
  const double h = 1e-6;
  for (double x : {-0.3, 0.1, 0.5})
    for (double y : {-0.2, 0.2}) {
      EXPECT_NEAR(phase_dx(g, x, y), (phase_eval(g, x + h, y) - phase_eval(g, x - h, y)) / (2 * h), 1e-7);
      EXPECT_NEAR(phase_dy(g, x, y), (phase_eval(g, x, y + h) - phase_eval(g, x, y - h)) / (2 * h), 1e-7);
    }
}

TEST(Phase, RejectsOffsetsOutsideSupport) {
  const auto c = PhaseSpec::circle();
  EXPECT_THROW(phase_eval(c, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(phase_hessian(c, -0.5, 0.3), std::invalid_argument);
  EXPECT_NO_THROW(phase_eval(c, 0.75, 0.0));
  EXPECT_THROW(phase_hessian_dy2(c, 0.0, 0.0), std::invalid_argument);
}

TEST(Phase, HessianFiniteDifferenceOrder) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> y(-0.5, 0.5), u(-0.6, 0.6), coef(-2, 2);
  for (int n = 0; n < 40; ++n) {
    const double b = y(rng), a = b + u(rng);
    const auto circ = hessian_fd_orders(PhaseSpec::circle(), a, b);
    EXPECT_GE(circ.hessian, 1.9) << a << " " << b;
    const auto gen = hessian_fd_orders(PhaseSpec::general(coef(rng), coef(rng), coef(rng), 1, 0), a, b);
    EXPECT_GE(gen.hessian, 1.9) << a << " " << b;
    EXPECT_GE(gen.hessian_dy2, 1.9) << a << " " << b;
  }
}

// ---------------------------------------------------------------- operator

OscKernelSpec small_spec() {
  OscKernelSpec s;
  s.big_lambda = 64.0;
  s.s = 2;
  s.m = -2;
  return s;
}

double max_row_sum_error(double points_per_bump, double target) {
  OscKernelSpec s;
  s.big_lambda = 0.0;
  s.s = 1;
  s.grid.points_per_bump = points_per_bump;
  const auto blk = build_osc_operator(s);
  const double w = 0.75 * 0.5;
  double worst = 0.0;
  int rows = 0;
  for (std::size_t i = 0; i < blk.x.size(); ++i) {
    if (std::abs(blk.x[i]) > 1.0 - w) continue;  // support of the row inside the y-window
    const auto row = blk.matrix.row(static_cast<Eigen::Index>(i));
    for (Eigen::Index j = 0; j < row.size(); ++j) {
      EXPECT_EQ(row(j).imag(), 0.0);
      EXPECT_GE(row(j).real(), 0.0);
    }
    worst = std::max(worst, std::abs(row.sum().real() - target));
    ++rows;
  }
  EXPECT_GT(rows, 10);
  return worst;
}

TEST(OscOperator, ZeroFrequencyRowSumsIntegrateBeta) {
  // int beta = int eta_c / 2, from a fine independent midpoint rule
  const int n = 1 << 16;
  double ib = 0.0, ie = 0.0;
  for (int i = 0; i < n; ++i) {
    ib += beta(-1.0 + (i + 0.5) * 2.0 / n) * 2.0 / n;
    ie += eta_c(-1.0 + (i + 0.5) * 2.0 / n) * 2.0 / n;
  }
  EXPECT_NEAR(ib, 0.5 * ie, 1e-12);
  // row sums are midpoint sums of beta(2u); the bump is C-infinity so the
  // error falls off faster than any power of the spacing
  EXPECT_LE(max_row_sum_error(16, 0.5 * ib), 2e-3 * 0.5 * ib);
  EXPECT_LE(max_row_sum_error(256, 0.5 * ib), 1e-9);
}

TEST(OscOperator, NegativeLambdaConjugates) {
  auto s = small_spec();
  const auto p = build_osc_operator(s);
  s.big_lambda = -s.big_lambda;
  const auto m = build_osc_operator(s);
  ASSERT_EQ(p.matrix.rows(), m.matrix.rows());
  EXPECT_LE((p.matrix.conjugate() - m.matrix).norm(), 1e-14 * p.matrix.norm());
}

TEST(OscOperator, BilinearFormMatchesBruteForce) {
  const auto spec = small_spec();
  const auto blk = build_osc_operator(spec);
  std::mt19937_64 rng(31);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 3; ++trial) {
    Eigen::VectorXcd u(blk.matrix.rows()), v(blk.matrix.cols());
    for (auto& z : u) z = {nd(rng), nd(rng)};
    for (auto& z : v) z = {nd(rng), nd(rng)};
    const std::complex<double> fast = (u.transpose() * blk.matrix * v)(0) * blk.hx;

    // kernel written out from its definition, entry by entry
    std::complex<double> slow = 0.0;
    for (std::size_t i = 0; i < blk.x.size(); ++i)
      for (std::size_t j = 0; j < blk.y.size(); ++j) {
        const double x = blk.x[i], y = blk.y[j];
        if (std::abs(x - y) > 0.75 / 4.0) continue;
        const double t = -2.0 * kPi * spec.big_lambda * phase_eval(spec.phase, x, y);
        const double amp = beta(4.0 * (x - y)) * phi(4.0 * y);
        slow += u(static_cast<Eigen::Index>(i)) * std::complex<double>(std::cos(t), std::sin(t)) * amp *
                v(static_cast<Eigen::Index>(j)) * blk.hx * blk.hy;
      }
    EXPECT_LE(std::abs(fast - slow), 1e-6 * std::abs(slow));
  }
}

TEST(OscOperator, SeparatedFrequencyProjectionsAnnihilate) {
  auto s = small_spec();
  s.ell1 = 4;
  const auto blk = build_osc_operator(s);
  const std::size_t np = blk.y.size();
  ASSERT_EQ(np, next_pow2(np));
  for (int lp : {6, 7, 1}) {
    double worst = 0.0;
    std::vector<std::complex<double>> row(np);
    for (Eigen::Index i = 0; i < blk.matrix.rows(); ++i) {
      for (std::size_t k = 0; k < np; ++k) row[k] = blk.matrix(i, static_cast<Eigen::Index>(k));
      dft_inplace(row, -1);
      for (std::size_t k = 0; k < np; ++k) row[k] *= phi(std::ldexp(dft_frequency(k, np, blk.hy), -lp)) / double(np);
      dft_inplace(row, +1);
      for (const auto& z : row) worst = std::max(worst, std::abs(z));
    }
    EXPECT_LE(worst, 1e-12 * blk.matrix.cwiseAbs().maxCoeff()) << lp;
  }
}

TEST(OscOperator, ResolutionRule) {
  OscKernelSpec s;
  s.big_lambda = 4096;
  s.grid.max_points = 64;
  try {
    build_osc_blocks(s);
    FAIL() << "expected ResolutionError";
  } catch (const ResolutionError& e) {
    EXPECT_GT(e.required(), 64u);
  }
  auto t = small_spec();
  const auto need = build_osc_operator(t);
  t.grid.ny = need.y.size() - 1;
  EXPECT_THROW(build_osc_operator(t), ResolutionError);
  t.grid.ny = need.y.size() + 10;
  EXPECT_EQ(build_osc_operator(t).y.size(), need.y.size() + 10);
}

TEST(OscOperator, RejectsBadSpec) {
  OscKernelSpec s;
  s.s = -1;
  EXPECT_THROW(build_osc_blocks(s), std::invalid_argument);
  s = OscKernelSpec{};
  s.grid.y_hi = s.grid.y_lo;
  EXPECT_THROW(build_osc_blocks(s), std::invalid_argument);
  s = OscKernelSpec{};
  s.ell1 = -2;
  EXPECT_THROW(build_osc_blocks(s), std::invalid_argument);
}

// ---------------------------------------------------------------- op_norm

Eigen::MatrixXcd random_matrix(Eigen::Index r, Eigen::Index c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = {nd(rng), nd(rng)};
  return m;
}

TEST(OpNorm, ScaledIdentity) {
  const std::complex<double> a(3.0, -4.0);
  const auto r = op_norm(Eigen::MatrixXcd(a * Eigen::MatrixXcd::Identity(30, 30)));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 5.0, 1e-12);
}

TEST(OpNorm, RankOne) {
  const auto a = random_matrix(40, 1, 1), b = random_matrix(25, 1, 2);
  const Eigen::MatrixXcd m = a * b.adjoint();
  EXPECT_NEAR(op_norm(m).value, a.norm() * b.norm(), 1e-10 * a.norm() * b.norm());
}

TEST(OpNorm, MatchesDenseSvd) {
  for (std::uint64_t seed : {3u, 4u, 5u}) {
    const auto m = random_matrix(200, 200, seed);
    const double ref = dense_spectral_norm(m);
    EXPECT_NEAR(op_norm(m).value, ref, 1e-8 * ref);
  }
  const auto tall = random_matrix(300, 70, 6);
  EXPECT_NEAR(op_norm(tall).value, dense_spectral_norm(tall), 1e-8 * dense_spectral_norm(tall));
}

TEST(OpNorm, UnitarilyInvariant) {
  const auto m = random_matrix(120, 80, 7);
  const Eigen::MatrixXcd u = Eigen::HouseholderQR<Eigen::MatrixXcd>(random_matrix(120, 120, 8)).householderQ();
  const Eigen::MatrixXcd v = Eigen::HouseholderQR<Eigen::MatrixXcd>(random_matrix(80, 80, 9)).householderQ();
  const double a = op_norm(m).value, b = op_norm(Eigen::MatrixXcd(u * m * v)).value;
  EXPECT_NEAR(a, b, 1e-8 * a);
}

TEST(OpNorm, BlocksTakeMaximum) {
  OscBlock a, b;
  a.matrix = 2.0 * Eigen::MatrixXcd::Identity(5, 5);
  a.hx = a.hy = 0.1;
  b.matrix = 1.5 * Eigen::MatrixXcd::Identity(4, 4);
  b.hx = 0.4;  // sqrt(hx / hy) = 2
  b.hy = 0.1;
  const std::vector<OscBlock> blocks{a, b};
  EXPECT_NEAR(op_norm(std::span<const OscBlock>(blocks)).value, 3.0, 1e-12);
}

// ---------------------------------------------------------------- decay fits

TEST(DecayFit, ConstantPhaseShiftLeavesNormFlat) {
  std::vector<double> params;
  std::vector<OscKernelSpec> specs;
  for (int k = 0; k < 6; ++k) {
    OscKernelSpec s;
    s.big_lambda = 16.0;
    s.s = 2;
    s.m = -1;
    // b u^2 + d (1 - u^2) with b = d: a constant, so a unimodular factor
    s.phase = PhaseSpec::general(0.137 * k, 0.137 * k, 0.0, 0, 0);
    params.push_back(k);
    specs.push_back(s);
  }
  const auto fit = decay_sweep("shift", params, specs);
  EXPECT_EQ(fit.fitted(), 4u);
  EXPECT_NEAR(fit.slope, 0.0, 1e-8);
  EXPECT_LE(fit.max_residual, 1e-8);
}

TEST(DecayFit, ExactPowerLaw) {
  std::vector<double> p, v;
  for (int k = 0; k < 8; ++k) {
    p.push_back(k);
    v.push_back(3.0 * std::pow(2.0, -0.75 * k));
  }
  const auto fit = fit_decay("k", p, v);
  EXPECT_NEAR(fit.slope, -0.75, 1e-13);
  EXPECT_NEAR(fit.intercept, std::log2(3.0), 1e-12);
  EXPECT_EQ(fit.fitted(), 6u);
  EXPECT_EQ(fit.exclusions().size(), 2u);
}

TEST(DecayFit, ExcludesUnusableAndRefuses) {
  std::vector<double> p{0, 1, 2, 3, 4, 5, 6};
  std::vector<double> v{1, 1, 0.5, NAN, 0.125, -1, 0.03125};
  EXPECT_THROW(fit_decay("k", p, v), std::invalid_argument);  // 3 usable after the skip
  const auto fit = fit_decay("k", p, v, 0);
  EXPECT_EQ(fit.fitted(), 5u);
  EXPECT_THROW(fit_decay("k", {1, 2}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(fit_decay("k", {1, 1, 1, 1}, {1, 2, 3, 4}, 0), std::invalid_argument);
  EXPECT_THROW(fit_decay("k", {1, 2, 3}, {1, 2}), std::invalid_argument);
}

TEST(DecayFit, CsvColumns) {
  const auto fit = fit_decay("k", {0, 1, 2, 3, 4, 5}, {1, 1, 0.5, 0.25, 0.125, 0.0625});
  std::ostringstream os;
  write_decay_csv(os, fit);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "parameter,value,log2_norm,slope_running");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 6);
  EXPECT_NE(os.str().find("\n5,0.0625,-4,-1\n"), std::string::npos);
}

// ---------------------------------------------------------------- scalar integral

TEST(ScalarOsc, ZeroFrequencyIsArcLength) {
  EXPECT_NEAR(std::abs(scalar_osc_integral({0, 0, 0, 0}) - std::complex<double>(kPi / 2, 0)), 0.0, 1e-14);
}

TEST(ScalarOsc, Conjugation) {
  const std::array<double, 4> e{3.1, -0.4, 7.0, 2.2}, m{-3.1, 0.4, -7.0, -2.2};
  EXPECT_NEAR(std::abs(scalar_osc_integral(e) - std::conj(scalar_osc_integral(m))), 0.0, 2e-10);
}

TEST(ScalarOsc, MatchesArbitraryPrecisionOracle) {
  const auto gold = golden::load("scalar_osc.json");
  const double tol = gold["abs_tol"].get<double>();
  for (const auto& v : gold["values"]) {
    const std::array<double, 4> eta{v["eta"][0], v["eta"][1], v["eta"][2], v["eta"][3]};
    const std::complex<double> want(v["value"][0].get<double>(), v["value"][1].get<double>());
    EXPECT_LE(std::abs(scalar_osc_integral(eta, tol) - want), tol) << v.dump();
  }
}

TEST(ScalarOsc, EnvelopeConstantStableUnderDoubling) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> nd;
  double c10 = 0.0, c11 = 0.0;
  for (int n = 0; n < 50; ++n) {
    std::array<double, 4> d{nd(rng), nd(rng), nd(rng), nd(rng)};
    const double len = std::hypot(std::hypot(d[0], d[1]), std::hypot(d[2], d[3]));
    std::array<double, 4> a{}, b{};
    for (int i = 0; i < 4; ++i) {
      a[i] = 1024.0 * d[i] / len;
      b[i] = 2048.0 * d[i] / len;
    }
    c10 = std::max(c10, std::abs(scalar_osc_integral(a)) * std::pow(1025.0, 0.25));
    c11 = std::max(c11, std::abs(scalar_osc_integral(b)) * std::pow(2049.0, 0.25));
  }
  EXPECT_GT(c10, 0.0);
  EXPECT_LE(c11, 2.0 * c10);
}

TEST(MeasureFourier, MatchesArbitraryPrecisionOracle) {
  const auto gold = golden::load("measure_fourier.json");
  for (const auto& v : gold["values"]) {
    const std::array<double, 3> xi{v["xi"][0], v["xi"][1], v["xi"][2]};
    const std::complex<double> want(v["value"][0].get<double>(), v["value"][1].get<double>());
    const auto got = measure_fourier(v["b"], v["d"], v["e"], v["k1"], v["k2"], xi);
    EXPECT_LE(std::abs(got - want), 1e-9) << v.dump();
  }
}

TEST(MeasureFourier, FrequencyMap) {
  const auto f = measure_frequency(1.0, 0.5, 0.3, 1, 2, {1.0, -1.0, 2.0});
  EXPECT_DOUBLE_EQ(f[0], 2.0);
  EXPECT_DOUBLE_EQ(f[1], -4.0);
  EXPECT_DOUBLE_EQ(f[2], (4.0 - 8.0) * 2.0);
  EXPECT_DOUBLE_EQ(f[3], 0.3 * 8.0 * 2.0);
}

TEST(MeasureFourier, DegenerateModulusIsConstant) {
  for (int j = 4; j <= 12; ++j)
    for (double sgn : {1.0, -1.0}) {
      const double xi3 = sgn * std::ldexp(1.0, j);
      EXPECT_NEAR(std::abs(measure_fourier(1, 1, 0, 0, 0, {0, 0, xi3})), kPi / 2, 1e-10);
      // b 4^k1 = d 4^k2 with k1 != k2
      EXPECT_NEAR(std::abs(measure_fourier(1, 4, 0, 1, 0, {0, 0, xi3})), kPi / 2, 1e-10);
    }
}

TEST(MeasureFourier, NondegenerateDecays) {
  const auto fit = measure_xi3_decay(1, 1, 1, 0, 0);
  EXPECT_LE(fit.slope, -0.22);
}

// ---------------------------------------------------------------- van der Corput

VdcInput vdc_samples(double a, double b, std::size_t n, double lambda, int k, auto phase, auto amp) {
  VdcInput in;
  in.lambda = lambda;
  in.k = k;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    in.x.push_back(x);
    in.phase.push_back(phase(x));
    in.amplitude.push_back(amp(x));
  }
  return in;
}

TEST(Vdc, Constants) {
  EXPECT_EQ(vdc_constant(1), 10.0);
  EXPECT_EQ(vdc_constant(1, 2), 30.0);
  EXPECT_EQ(vdc_constant(2), 20.0);
  EXPECT_EQ(vdc_constant(3, 5), 40.0);
  EXPECT_THROW(vdc_constant(0), std::invalid_argument);
}

TEST(Vdc, LinearPhaseDecaysLikeInverseLambda) {
  for (int j = 4; j <= 12; ++j) {
    const double lam = std::ldexp(1.0, j);
    auto in = vdc_samples(0, 1, 1 << 16, lam, 1, [](double x) { return x; }, [](double x) { return std::exp(-x * x); });
    in.sign_changes = 0;
    const auto r = vdc_check(in);
    EXPECT_LE(r.lhs, r.rhs);
    EXPECT_GE(lam * r.lhs, 0.5);
    EXPECT_LE(lam * r.lhs, 1.5);
  }
}

TEST(Vdc, FresnelOracles) {
  const auto gold = golden::load("vdc_fresnel.json");
  for (const auto& v : gold["values"]) {
    const double lam = v["lambda"];
    auto q = vdc_samples(-1, 1, (1 << 17) + 1, lam, 2, [](double x) { return x * x; }, [](double) { return 1.0; });
    const auto rq = vdc_check(q);
    EXPECT_NEAR(rq.lhs, v["quadratic"].get<double>(), 2e-6) << lam;
    EXPECT_LE(rq.lhs, rq.rhs);

    auto h = vdc_samples(1, 2, (1 << 17) + 1, lam, 1, [](double x) { return 0.5 * x * x; }, [](double) { return 1.0; });
    h.sign_changes = 0;
    const auto rh = vdc_check(h);
    EXPECT_NEAR(rh.lhs, v["half_square"].get<double>(), 2e-6) << lam;
    EXPECT_LE(rh.lhs, rh.rhs);
  }
}

TEST(Vdc, RejectsViolatedHypotheses) {
  auto one = [](double) { return 1.0; };
  // phase' = x < 1 on [0, 1]
  auto a = vdc_samples(0, 1, 4097, 16, 1, [](double x) { return 0.5 * x * x; }, one);
  a.sign_changes = 0;
  EXPECT_THROW(vdc_check(a), std::invalid_argument);
  // k = 1 needs a sign-change count
  auto b = vdc_samples(1, 2, 4097, 16, 1, [](double x) { return 0.5 * x * x; }, one);
  EXPECT_THROW(vdc_check(b), std::invalid_argument);
  // phase'' = 2x changes sign once
  auto c = vdc_samples(-1, 1, 4097, 16, 1, [](double x) { return x * x * x / 3.0 + x; }, one);
  c.sign_changes = 0;
  EXPECT_THROW(vdc_check(c), std::invalid_argument);
  c.sign_changes = 1;
  EXPECT_NO_THROW(vdc_check(c));
  // under-resolved oscillation
  auto d = vdc_samples(-1, 1, 65, 4096, 2, [](double x) { return x * x; }, one);
  EXPECT_THROW(vdc_check(d), std::invalid_argument);
  auto e = vdc_samples(-1, 1, 4097, 16, 2, [](double x) { return x * x; }, one);
  e.x[10] += 1e-4;
  EXPECT_THROW(vdc_check(e), std::invalid_argument);
  e = vdc_samples(-1, 1, 4097, -1.0, 2, [](double x) { return x * x; }, one);
  EXPECT_THROW(vdc_check(e), std::invalid_argument);
}

}  // namespace
}  // namespace heislac
