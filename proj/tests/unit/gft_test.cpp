#include "heislac/gft.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "golden.hpp"
#include "heislac/experiments.hpp"

namespace heislac {
namespace {

double gauss3(double x1, double x2, double x3) { return std::exp(-(x1 * x1 + x2 * x2 + x3 * x3)); }

// x1 cell centers on multiples of the representation step 1/8, so x - y lands on samples
GridFunction3 gaussian_on_aligned_grid() {
  return sample(gauss3, Box3{{-4.0625, -4, -4}, {4.0625, 4, 4}}, {65, 64, 64});
}

TEST(Gft, ZeroFunctionAndRejectsZeroLambda) {
  const auto z = sample([](double, double, double) { return 0.0; }, Box3{{-1, -1, -1}, {1, 1, 1}}, {4, 4, 4});
  const auto op = gft(z, 0.7, Grid1D{-2, 2, 16});
  EXPECT_EQ(op.kernel.norm(), 0.0);
  EXPECT_EQ(hs_norm(op), 0.0);
  EXPECT_THROW(gft(z, 0.0), std::invalid_argument);
  EXPECT_THROW(gft(z, 1.0, Grid1D{1, 0, 8}), std::invalid_argument);
}

TEST(Gft, Linear) {
  const Box3 box{{-3, -3, -3}, {3, 3, 3}};
  const auto f = sample(gauss3, box, {24, 24, 24});
  const auto g = sample([](double a, double b, double c) { return a * std::exp(-a * a - 2 * b * b - c * c); }, box,
                        {24, 24, 24});
  const Grid1D grid{-4, 4, 48};
  const auto lhs = gft(2.0 * f + (-0.5) * g, 1.3, grid);
  const auto rhs = 2.0 * gft(f, 1.3, grid).kernel - 0.5 * gft(g, 1.3, grid).kernel;
  EXPECT_LE((lhs.kernel - rhs).norm(), 1e-13 * rhs.norm());
}

TEST(Gft, GaussianKernelMatchesQuadratureOracle) {
  const auto gold = golden::load("gft_gaussian_kernel.json");
  const Grid1D grid{gold["grid"]["lo"], gold["grid"]["hi"], gold["grid"]["n"]};
  const auto f = gaussian_on_aligned_grid();
  double lam_prev = 0.0, worst = 0.0, scale = 0.0;
  GFTOperator op;
  for (const auto& e : gold["entries"]) {
    const double lam = e["lambda"];
    if (lam != lam_prev) {
      op = gft(f, lam, grid);
      lam_prev = lam;
    }
    const std::complex<double> want(e["value"][0].get<double>(), e["value"][1].get<double>());
    const auto got = op.kernel(e["a"].get<int>(), e["b"].get<int>());
    worst = std::max(worst, std::abs(got - want));
    scale = std::max(scale, std::abs(want));
  }
  EXPECT_LE(worst, 1e-3 * scale);
}

TEST(Gft, LambdaSignConjugatesRealFunctions) {
  const auto f = sample([](double a, double b, double c) { return gauss3(a - 0.2, b, c + 0.1); },
                        Box3{{-4, -4, -4}, {4, 4, 4}}, {32, 32, 32});
  const Grid1D grid{-6, 6, 64};
  const auto p = gft(f, 0.8, grid);
  const auto m = gft(f, -0.8, grid);
  EXPECT_LE((p.kernel.conjugate() - m.kernel).norm(), 1e-12 * p.kernel.norm());
}

TEST(HsNorm, NormAxioms) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> nd;
  const Grid1D grid{-1, 1, 20};
  auto random_op = [&] {
    GFTOperator op{1.0, grid, Eigen::MatrixXcd(20, 20)};
    for (Eigen::Index i = 0; i < 20; ++i)
      for (Eigen::Index j = 0; j < 20; ++j) op.kernel(i, j) = {nd(rng), nd(rng)};
    return op;
  };
  for (int t = 0; t < 20; ++t) {
    auto a = random_op(), b = random_op();
    GFTOperator sum{1.0, grid, a.kernel + b.kernel};
    GFTOperator scaled{1.0, grid, std::complex<double>(-2.5, 1.0) * a.kernel};
    EXPECT_LE(hs_norm(sum), hs_norm(a) + hs_norm(b) + 1e-12);
    EXPECT_NEAR(hs_norm(scaled), std::abs(std::complex<double>(-2.5, 1.0)) * hs_norm(a), 1e-12 * hs_norm(a));
  }
}

TEST(HsNorm, RankOneIsProductOfNorms) {
  const Grid1D grid{-2, 2, 40};
  Eigen::VectorXcd a(40), b(40);
  for (Eigen::Index i = 0; i < 40; ++i) {
    const double x = grid.center(static_cast<std::size_t>(i));
    a(i) = std::exp(-x * x);
    b(i) = {std::cos(x), x};
  }
  const GFTOperator op{1.0, grid, a * b.transpose()};
  const double h = grid.step();
  EXPECT_NEAR(hs_norm(op), a.norm() * std::sqrt(h) * b.norm() * std::sqrt(h), 1e-13);
}

TEST(Compose, IsKernelProduct) {
  const Grid1D grid{-1, 1, 8};
  GFTOperator a{1.0, grid, Eigen::MatrixXcd::Identity(8, 8) / grid.step()};
  GFTOperator b{1.0, grid, Eigen::MatrixXcd::Random(8, 8)};
  EXPECT_LE((compose(a, b).kernel - b.kernel).norm(), 1e-13);
  GFTOperator c{1.0, Grid1D{-1, 1, 9}, Eigen::MatrixXcd::Zero(9, 9)};
  EXPECT_THROW(compose(a, c), std::invalid_argument);
}

TEST(LambdaQuadrature, Layout) {
  const auto q = LambdaQuadrature::log_spaced(1.0 / 64, 64, 4);
  EXPECT_EQ(q.nodes.size(), 2u * (12 * 4 + 1));
  EXPECT_DOUBLE_EQ(q.cutoff(), 1.0 / 64);
  double s = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); i += 2) {
    EXPECT_EQ(q.nodes[i], -q.nodes[i + 1]);
    s += q.weights[i];
  }
  // trapezoid in t = log lambda applied to e^t, step h: exact sum is
  // (e^b - e^a) (h/2) coth(h/2)
  const double h = std::log(2.0) / 4;
  EXPECT_NEAR(s, (64 - 1.0 / 64) * (h / 2) / std::tanh(h / 2), 1e-10);
  EXPECT_THROW(LambdaQuadrature::log_spaced(0, 1, 4), std::invalid_argument);
}

TEST(Plancherel, ZeroAndHomogeneity) {
  const Box3 box{{-4, -4, -4}, {4, 4, 4}};
  const auto z = sample([](double, double, double) { return 0.0; }, box, {8, 8, 8});
  const auto r0 = plancherel_check(z, LambdaQuadrature::log_spaced(0.25, 4, 2), Grid1D{-4, 4, 16});
  EXPECT_EQ(r0.lhs, 0.0);
  EXPECT_EQ(r0.rhs, 0.0);

  const auto f = sample(gauss3, box, {16, 16, 16});
  const auto lq = LambdaQuadrature::log_spaced(0.25, 4, 2);
  const Grid1D grid{-4, 4, 32};
  const auto r1 = plancherel_check(f, lq, grid);
  const auto r2 = plancherel_check(2.0 * f, lq, grid);
  EXPECT_NEAR(r2.lhs, 4.0 * r1.lhs, 1e-12 * r1.lhs);
  EXPECT_NEAR(r2.rhs, 4.0 * r1.rhs, 1e-12 * r1.rhs);
}

TEST(Plancherel, SmoothBumpAtDefaultsAndUnderRefinement) {
  const GftCheckConfig cfg;
  const auto a = gft_check(cfg);
  const auto b = gft_check(refine(cfg));
  // analytic ||f||^2 for exp(-|x|^2) on R^3
  EXPECT_NEAR(a.plancherel.lhs, std::pow(std::numbers::pi / 2.0, 1.5), 1e-6);
  EXPECT_LE(a.plancherel.relative_discrepancy(), 0.05);
  EXPECT_LT(b.plancherel.relative_discrepancy(), a.plancherel.relative_discrepancy());
  EXPECT_LE(a.convolution, 0.05);
  EXPECT_LE(a.convolution_swapped, 0.05);
  EXPECT_LT(b.convolution, a.convolution);
  EXPECT_LT(b.convolution_swapped, a.convolution_swapped);
  EXPECT_GT(a.plancherel.near_zero_estimate, 0.0);
}

TEST(Convolution, VanishingFactorGivesZero) {
  const Box3 box{{-2, -2, -2}, {2, 2, 2}};
  const auto f = sample(gauss3, box, {8, 8, 8});
  const auto z = sample([](double, double, double) { return 0.0; }, box, {8, 8, 8});
  EXPECT_EQ(convolution_check(f, z, 1.0, Grid1D{-3, 3, 16}), 0.0);
}

}  // namespace
}  // namespace heislac
