#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "golden.hpp"
#include "heislac/cutoffs.hpp"
#include "heislac/lp_projection.hpp"

namespace heislac {
namespace {

double l2(const ComplexVec& v) {
  double s = 0.0;
  for (auto z : v) s += std::norm(z);
  return std::sqrt(s);
}

TEST(Cutoffs, PaperValues) {
  EXPECT_EQ(psi(0.5), 1.0);
  EXPECT_EQ(phi(3.0), 0.0);
  for (double t : {-3.0, -1.2, 0.0, 0.7, 1.5, 1.99, 2.5}) EXPECT_DOUBLE_EQ(psi(t) + psi_c(t), 1.0);
}

TEST(Cutoffs, GoldenValues) {
  const auto gold = golden::load("cutoffs.json");
  for (const auto& row : gold["values"]) {
    const double t = row["t"];
    EXPECT_NEAR(psi(t), row["psi"].get<double>(), 1e-15) << t;
    EXPECT_NEAR(phi(t), row["phi"].get<double>(), 1e-15) << t;
    EXPECT_NEAR(psi_c(t), row["psi_c"].get<double>(), 1e-15) << t;
    EXPECT_NEAR(eta_c(t), row["eta_c"].get<double>(), 1e-15) << t;
    EXPECT_NEAR(beta(t), row["beta"].get<double>(), 1e-15) << t;
  }
}

TEST(Cutoffs, SupportsAndRanges) {
  for (int n = -4000; n <= 4000; ++n) {
    const double t = n * 1e-3;
    const double a = std::abs(t);
    EXPECT_GE(psi(t), 0.0);
    EXPECT_LE(psi(t), 1.0);
    EXPECT_GE(eta_c(t), 0.0);
    EXPECT_LE(eta_c(t), 1.0);
    if (a <= 1.0) { EXPECT_EQ(psi(t), 1.0); }
    if (a >= 2.0) { EXPECT_EQ(psi(t), 0.0); }
    if (a < 0.5 || a > 2.0) { EXPECT_EQ(phi(t), 0.0); }
    if (a <= 0.5) { EXPECT_EQ(eta_c(t), 1.0); }
    if (a >= 0.75) { EXPECT_EQ(eta_c(t), 0.0); }
    if (a < 0.25 || a > 0.75) { EXPECT_EQ(beta(t), 0.0); }
    EXPECT_EQ(psi(t), psi(-t));
  }
}

TEST(Cutoffs, NamesRoundTrip) {
  for (Cutoff c : {Cutoff::psi, Cutoff::phi, Cutoff::psi_c, Cutoff::eta_c, Cutoff::beta}) {
    EXPECT_EQ(parse_cutoff(cutoff_name(c)), c);
    EXPECT_EQ(eval_cutoff(c, 0.6), eval_cutoff(*parse_cutoff(cutoff_name(c)), 0.6));
  }
  EXPECT_FALSE(parse_cutoff("eta"));
}

TEST(PartitionCheck, Examples) {
  EXPECT_EQ(partition_check(1.0, 10), 1.0);
  EXPECT_EQ(partition_check(std::ldexp(1.0, 12), 10), psi(4.0));
  EXPECT_EQ(partition_check(std::ldexp(1.0, 12), 10), 0.0);
  EXPECT_NEAR(partition_check(-1.37, 10), 1.0, 1e-14);
  EXPECT_THROW(partition_check(0.0, 3), std::invalid_argument);
  EXPECT_THROW(partition_check(1.0, -1), std::invalid_argument);
}

TEST(PartitionCheck, TelescopingEverywhere) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> e(-14.0, 14.0);
  for (int n = 0; n < 5000; ++n) {
    const double t = (n % 2 ? -1.0 : 1.0) * std::exp2(e(rng));
    const double want = psi(std::ldexp(t, -10)) - psi(std::ldexp(t, 11));
    EXPECT_NEAR(partition_check(t, 10), want, 1e-14) << t;
    if (std::abs(t) >= std::ldexp(1.0, -10) && std::abs(t) <= std::ldexp(1.0, 10)) {
      EXPECT_NEAR(partition_check(t, 10), 1.0, 1e-14) << t;
    }
  }
}

TEST(BetaPartition, Telescoping) {
  for (int n = 1; n < 2000; ++n) {
    const double x = n * 4e-4;
    EXPECT_NEAR(beta_partition(x, 8), eta_c(x) - eta_c(std::ldexp(x, 9)), 1e-14);
    if (x >= std::ldexp(0.75, -9)) { EXPECT_NEAR(beta_partition(x, 8), eta_c(x), 1e-14); }
  }
}

ComplexVec tone(double xi, double h, std::size_t n) {
  // Gaussian-windowed tone centred in the window
  ComplexVec v(n);
  const double mid = 0.5 * h * static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * h - mid;
    v[i] = std::cos(2.0 * std::numbers::pi * xi * x) * std::exp(-x * x / 64.0);
  }
  return v;
}

TEST(FreqMultiplier, PassesToneWithWeight) {
  const double h = 1.0 / 32.0;
  const std::size_t n = 4096;
  for (double xi : {3.0, 4.0, 5.5, 7.0}) {
    const auto in = tone(xi, h, n);
    const auto out = freq_multiplier_1d(in, h, 2);
    const double w = phi(std::ldexp(xi, -2));
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(out[i] - w * in[i]));
    // the window spreads the tone over about 0.02 in frequency
    EXPECT_LE(worst, 0.02) << xi;
  }
  const auto far = freq_multiplier_1d(tone(12.0, h, n), h, 2);
  EXPECT_LE(l2(far), 1e-10 * l2(tone(12.0, h, n)));
}

TEST(FreqMultiplier, DisjointSupportsGiveExactZero) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  ComplexVec v(300);
  for (auto& z : v) z = {nd(rng), nd(rng)};
  for (int l = -2; l <= 3; ++l)
    for (int lp = -2; lp <= 3; ++lp) {
      if (std::abs(l - lp) < 2) continue;
      const std::vector<int> ells{l, lp};
      const auto out = freq_multiplier_chain_1d(v, 0.1, ells);
      for (auto z : out) EXPECT_EQ(z, std::complex<double>(0.0, 0.0));
    }
  // the separate passes only vanish up to periodisation leakage
  const auto twice = freq_multiplier_1d(freq_multiplier_1d(v, 0.1, 0), 0.1, 3);
  EXPECT_LE(l2(twice), l2(v));
}

TEST(FreqMultiplier, Contraction) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    ComplexVec v(64 + 17 * trial);
    for (auto& z : v) z = {nd(rng), nd(rng)};
    for (int l = -3; l <= 3; ++l) EXPECT_LE(l2(freq_multiplier_1d(v, 0.25, l)), l2(v) * (1 + 1e-12));
  }
}

TEST(SpaceMultiplier, Examples) {
  std::vector<double> y(50);
  ComplexVec v(50);
  for (std::size_t i = 0; i < 50; ++i) {
    y[i] = -1.0 + 0.04 * static_cast<double>(i);
    v[i] = {std::sin(3.0 * y[i]), 1.0 - y[i]};
  }
  const auto zero = space_multiplier_1d(v, y, 1e6);
  for (std::size_t i = 0; i < 50; ++i)
    if (std::abs(y[i]) > 2e-6) { EXPECT_EQ(zero[i], std::complex<double>(0.0, 0.0)); }
  const auto once = space_multiplier_1d(v, y, 3.0);
  const auto twice = space_multiplier_1d(once, y, 3.0);
  for (std::size_t i = 0; i < 50; ++i) {
    EXPECT_LE(std::abs(once[i]), std::abs(v[i]));
    const double p = phi(3.0 * y[i]);
    EXPECT_NEAR(std::abs(twice[i] - p * p * v[i]), 0.0, 1e-15);
  }
  EXPECT_THROW(space_multiplier_1d(v, std::vector<double>(3), 1.0), std::invalid_argument);
}

// f(x1, x2) g-windowed and constant in x3 on a tall box
GridFunction3 planar(double xi, double a, std::size_t n0) {
  auto field = [=](double x1, double x2, double) {
    return std::cos(2.0 * std::numbers::pi * xi * x1) * std::exp(-x1 * x1 / (a * a) - x2 * x2);
  };
  return sample(field, Box3{{-16, -3, -60}, {16, 3, 60}}, {n0, 12, 24});
}

TEST(LpProject, XThreeIndependentIsPlainPiece) {
  const auto f = planar(1.0, 6.0, 256);
  for (int j : {0, -2}) {
    const auto g = lp_project(f, j, 1);
    const double w = phi(std::ldexp(1.0, j));
    double worst = 0.0;
    for (std::size_t i = 0; i < 256; ++i)
      for (std::size_t jj = 0; jj < 12; ++jj)
        for (std::size_t k = 8; k < 16; ++k) worst = std::max(worst, std::abs(g.at(i, jj, k) - w * f.at(i, jj, k)));
    EXPECT_LE(worst, 0.02) << j;
  }
}

GridFunction3 smooth3(std::size_t n) {
  auto field = [](double x1, double x2, double x3) {
    return std::exp(-(x1 * x1 + x2 * x2) - 0.5 * x3 * x3) * (1.0 + 0.5 * std::sin(2.0 * x1 - x2));
  };
  return sample(field, Box3{{-4, -4, -20}, {4, 4, 20}}, {n, n, 5 * n});
}

TEST(LpProject, ReconstructionFromTelescoping) {
  const auto f = smooth3(32);
  const int L = 4;
  for (int nu : {1, 2}) {
    auto r = lp_remainders(f, L, nu);
    GridFunction3 sum = r.low + r.high;
    for (int j = -L; j <= L; ++j) sum += lp_project(f, j, nu);
    const double err = lp_norm(sum - f, std::numeric_limits<double>::infinity());
    EXPECT_LE(err, (2 * L + 3) * 2.0 * interpolation_tolerance(f)) << nu;
  }
}

TEST(LpProject, RoutesAgree) {
  // the sampled kernel of band 2^{-j-1}..2^{1-j} must sit below the Nyquist
  // frequency 1/(2h) = 2, so j >= 0 on this grid
  const auto f = smooth3(32);
  for (int nu : {1, 2})
    for (int j : {0, 1, 2}) {
      const auto a = lp_project(f, j, nu, LpRoute::shear_multiplier);
      const auto b = lp_project(f, j, nu, LpRoute::direct_quadrature);
      const double tol = 10.0 * interpolation_tolerance(f);
      EXPECT_LE(lp_norm(a - b, std::numeric_limits<double>::infinity()), tol) << nu << " " << j;
    }
}

TEST(LpProject, BoundedOnDiscreteL2) {
  const auto f = smooth3(24);
  for (int nu : {1, 2})
    for (int j : {-2, 0, 2})
      EXPECT_LE(lp_norm(lp_project(f, j, nu), 2.0), lp_norm(f, 2.0) * (1.0 + interpolation_tolerance(f)));
}

TEST(LpProject, FarApartIndicesNearlyOrthogonal) {
  const auto f = smooth3(32);
  const double base = lp_norm(f, 2.0);
  for (int nu : {1, 2}) {
    const auto once = lp_project(f, 0, nu);
    const auto twice = lp_project(once, 2, nu);
    // only shear interpolation leaks between the two multipliers
    EXPECT_LE(lp_norm(twice, 2.0), 2.0 * interpolation_tolerance(f) * base + 1e-3 * base) << nu;
  }
}

TEST(LpProject, RejectsBadAxis) {
  const auto f = smooth3(8);
  EXPECT_THROW(lp_project(f, 0, 3), std::invalid_argument);
  const std::vector<std::pair<double, double>> win{{0.0, 1.0}};
  const Axes3 axes{Axis::stratified(-4, 4, 1.0, 0.25, win), Axis::uniform(-4, 4, 8), Axis::uniform(-4, 4, 8)};
  const auto g = sample([](double, double, double) { return 1.0; }, axes);
  EXPECT_THROW(lp_project(g, 0, 1), std::invalid_argument);
  EXPECT_NO_THROW(lp_project(g, 0, 2));
}

TEST(LpKernel, IsInverseTransformOfPhi) {
  // sum_n kappa(n h) h exp(-2 pi i xi n h) approximates phi(2^j xi)
  const int j = 1;
  const double h = 0.05;
  const auto k = lp_kernel_samples(j, h, 2000);
  for (double xi : {0.1, 0.3, 0.5, 0.8, 1.2}) {
    double s = 0.0;
    for (std::size_t n = 0; n < k.size(); ++n) {
      const double y = (static_cast<double>(n) - 2000.0) * h;
      s += k[n] * h * std::cos(2.0 * std::numbers::pi * xi * y);
    }
    EXPECT_NEAR(s, phi(std::ldexp(xi, j)), 1e-6) << xi;
  }
}

}  // namespace
}  // namespace heislac
