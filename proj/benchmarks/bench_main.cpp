#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "heislac/averages.hpp"
#include "heislac/gft.hpp"
#include "heislac/grid.hpp"
#include "heislac/lp_projection.hpp"
#include "heislac/op_norm.hpp"
#include "heislac/osc_operator.hpp"
#include "heislac/runs.hpp"
#include "heislac/scalar_osc.hpp"

using namespace heislac;

namespace {

void BM_OpNormDense(benchmark::State& st) {
  const auto n = static_cast<Eigen::Index>(st.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = {nd(rng), nd(rng)};
  for (auto _ : st) benchmark::DoNotOptimize(op_norm(m).value);
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_OpNormDense)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond)->Complexity();

void BM_OscBlocks(benchmark::State& st) {
  OscKernelSpec s;
  s.big_lambda = 1024.0;
  s.s = static_cast<int>(st.range(0));
  s.m = -6;
  for (auto _ : st) {
    const auto blocks = build_osc_blocks(s);
    benchmark::DoNotOptimize(op_norm(std::span<const OscBlock>(blocks)).value);
  }
}
BENCHMARK(BM_OscBlocks)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_GftKernel(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto f = sample([](double a, double b, double c) { return std::exp(-(a * a + b * b + c * c)); },
                        Box3{{-4, -4, -4}, {4, 4, 4}}, {n, n, n});
  for (auto _ : st) benchmark::DoNotOptimize(gft(f, 1.0).kernel.norm());
}
BENCHMARK(BM_GftKernel)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_EllipticAveragePoint(benchmark::State& st) {
  const auto q = ThetaQuadrature::trapezoid(static_cast<std::size_t>(st.range(0)));
  const Matrix2 a = Matrix2::symmetric(1.0, 0.3, 2.0);
  const ScaleParams sp{0.7, 1.3};
  double x3 = 0.0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(elliptic_average_at(smooth_test_bump, a, sp, q, 0.1, -0.2, x3));
    x3 += 1e-6;
  }
}
BENCHMARK(BM_EllipticAveragePoint)->Arg(64)->Arg(512)->Arg(4096);

void BM_ScalarOsc(benchmark::State& st) {
  const double r = std::ldexp(1.0, static_cast<int>(st.range(0)));
  const std::array<double, 4> eta{0.3 * r, -0.5 * r, 0.6 * r, 0.55 * r};
  for (auto _ : st) benchmark::DoNotOptimize(scalar_osc_integral(eta));
}
BENCHMARK(BM_ScalarOsc)->DenseRange(4, 12, 4)->Unit(benchmark::kMicrosecond);

void BM_FreqMultiplier(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  std::vector<std::complex<double>> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::exp(-std::pow((double(i) - n / 2.0) / (n / 8.0), 2));
  for (auto _ : st) benchmark::DoNotOptimize(freq_multiplier_1d(v, 1.0 / 64, 3).data());
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_FreqMultiplier)->RangeMultiplier(4)->Range(256, 65536)->Unit(benchmark::kMicrosecond)->Complexity();

void BM_TwistedMultiplier(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto f = sample(smooth_test_bump, Box3{{-3, -3, -6}, {3, 3, 6}}, {n, n, 2 * n});
  for (auto _ : st) benchmark::DoNotOptimize(lp_project(f, 0, 1).at(0, 0, 0));
}
BENCHMARK(BM_TwistedMultiplier)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
