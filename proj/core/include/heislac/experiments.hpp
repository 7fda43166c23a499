#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heislac/averages.hpp"
#include "heislac/decay.hpp"
#include "heislac/gft.hpp"
#include "heislac/matrix.hpp"
#include "heislac/osc_operator.hpp"

namespace heislac {

// ---------------------------------------------------------------- counterexample

/// h_delta(x, x3) = chi_{B_10}(x) chi_{[0, delta]}(x3), lifted by the
/// symmetric part of A, and the lacunary circular maximal function over
/// k in (-m, 1) evaluated on B_1 x [0, 3] in the sheared frame.
struct CounterexampleSpec {
  int m = 2;
  std::optional<double> delta;  // default 2^{-2m+1}
  double p = 2.0;
  Matrix2 a = Matrix2::identity();
  std::size_t x_cells = 64;         // output cells per x-axis on [-1, 1]
  std::size_t input_x_cells = 128;  // input cells per x-axis on [-10.5, 10.5]
  double cells_per_slab = 8.0;      // output x3-cells per delta near the slabs
  double coarse = 0.05;             // output x3-cell width elsewhere
  std::size_t theta_panels = 256;

  double delta_value() const;
  /// Throws std::invalid_argument for m < 1, p < 1 or delta outside
  /// (2^{-2m}, 2^{-2m+2}); ResolutionError when the slabs are under-resolved.
  void validate() const;
};

struct CounterexampleResult {
  int m = 0;
  double delta = 0.0;
  double p = 2.0;
  double max_norm = 0.0;      // ||sup_k |E_{2^k} f| ||_p on B_1 x [0, 3]
  double input_norm = 0.0;    // ||h_delta||_p on its grid
  double exact_input_norm = 0.0;  // (100 pi delta)^{1/p}
  double ratio = 0.0;             // max_norm / input_norm
  double normalized = 0.0;        // ratio / m^{1/p}
  double oracle_ratio = 0.0;      // 2 pi (m delta |B_1|)^{1/p} / (100 pi delta)^{1/p}
  std::size_t output_cells = 0;
  double seconds = 0.0;
};

CounterexampleResult divergence_experiment(const CounterexampleSpec& spec, Diagnostics* diag = nullptr);

/// Panel rule for the average of a function that is rough in x3: on each of
/// the n equal theta-panels the x3-argument is taken linear between the panel
/// ends and integrated exactly against the trilinear interpolant of `h`
/// (x frozen at the panel midpoint). `f(z, z3) = h(z, z3 - lift(z))`.
class PanelAverager {
 public:
  PanelAverager(const GridFunction3& h, const Matrix2& lift_sym, std::size_t panels);
  double operator()(const Matrix2& a, const ScaleParams& s, double x1, double x2, double x3) const;
  /// int_{-inf}^{u} h(x1, x2, t) dt for the interpolant.
  double primitive(double x1, double x2, double u) const;

 private:
  const GridFunction3& h_;
  QuadraticForm lift_;
  std::size_t panels_;
  std::vector<double> centers_;  // x3 cell centers of h
  std::vector<double> prim_;     // primitive at the centers, per column
  std::vector<double> total_;    // full column integral
};

// ---------------------------------------------------------------- dichotomy

struct DichotomyConfig {
  int k_max = 6;           // |k1|, |k2| <= k_max
  int j_lo = 4;            // xi3 = 2^j / scale
  int j_hi = 12;
  double degenerate_slope = -0.05;
};

struct DichotomyPair {
  int k1 = 0;
  int k2 = 0;
  double slope = 0.0;
  bool degenerate = false;
};

struct DichotomyEntry {
  std::string label;
  Matrix2 a;
  MatrixClassification analytic;
  bool scanned = false;  // false when A_w != 0 (bounded, reported via classify)
  bool numeric_circular_bounded = true;
  bool numeric_elliptic_bounded = true;
  std::vector<DichotomyPair> pairs;
  bool agrees() const {
    return numeric_circular_bounded == analytic.circular_bounded &&
           numeric_elliptic_bounded == analytic.elliptic_bounded;
  }
};

/// Normalization of the xi3 sweep: |b| 4^k1 + |d| 4^k2 + |e| 2^{k1+k2}.
double dichotomy_scale(const Matrix2& sym, int k1, int k2);

/// Slope of log2 |measure_fourier(0, 0, xi3)| against j for xi3 = 2^j / scale.
/// Scale 0 has no third-coordinate coupling and is reported as slope -inf
/// (never degenerate).
double xi3_decay_slope(const Matrix2& sym, int k1, int k2, const DichotomyConfig& cfg);

DichotomyEntry scan_matrix(const std::string& label, const Matrix2& a, const DichotomyConfig& cfg = {});

struct LabeledMatrix {
  std::string label;
  Matrix2 a;
};
std::vector<LabeledMatrix> curated_matrix_suite();

// ---------------------------------------------------------------- decay sweeps

/// One-parameter operator-norm sweep at L = lambda 2^{k1+k2}.
struct SweepConfig {
  std::string parameter = "s";  // s | ell1 | ell2
  int lo = 0;
  int hi = 6;
  double big_lambda = 1024.0;
  int s = 0;  // fixed s for ell sweeps
  std::optional<int> m;
  std::optional<int> ell1;
  std::optional<int> ell2;
  PhaseSpec phase;
  OscGridSpec grid;
  double tol = 1e-10;

  /// The pinned regimes: s in 0..6 (m = -6); ell2 in 5..10 (s = 2, 2.5 points
  /// per period); ell1 in 12..17 (s = 6, ell2 = 0).
  static SweepConfig standard(const std::string& parameter);
  std::vector<OscKernelSpec> specs() const;
};

/// Acceptance slope for each sweep parameter.
double sweep_threshold(const std::string& parameter);

/// 2^{ell1} >= 2 (2^{ell2} + |L|): the regime of the ell1 estimate with the
/// proof's constant relaxed to 2.
bool ell1_regime(const OscKernelSpec& spec);

DecayFit run_sweep(const SweepConfig& cfg);

// ---------------------------------------------------------------- Fourier decay

struct EnvelopeConfig {
  std::size_t directions = 100;
  int j_lo = 4;  // |eta| = 2^j
  int j_hi = 12;
  std::uint64_t seed = 20240611;
};

struct EnvelopeResult {
  DecayFit fit;                  // log2 max_dir |I(2^j u)| against j
  std::vector<double> max_scaled;  // max_dir |I| (1 + |eta|)^{1/4} per j
};

EnvelopeResult fourier_envelope(const EnvelopeConfig& cfg = {});

/// log2 |measure_fourier(b, d, e, k1, k2, (0, 0, 2^j))| against j.
DecayFit measure_xi3_decay(double b, double d, double e, int k1, int k2, int j_lo = 4, int j_hi = 12,
                           std::size_t skip_smallest = kPreAsymptotic);

// ---------------------------------------------------------------- GFT checks

struct GftCheckConfig {
  double half_width = 4.0;   // box [-w, w]^3 for the test functions
  std::size_t cells = 32;    // per axis
  Grid1D grid;               // representation grid
  std::size_t per_octave = 8;
  double lambda = 1.0;       // for the convolution identity
};

struct GftCheckResult {
  PlancherelResult plancherel;
  double convolution = 0.0;
  double convolution_swapped = 0.0;
};

/// Smooth bump test functions of the checks.
double gft_bump_f(double x1, double x2, double x3);
double gft_bump_g(double x1, double x2, double x3);

GftCheckResult gft_check(const GftCheckConfig& cfg, Diagnostics* diag = nullptr);
/// Doubles every resolution: grid cells, representation points and lambda nodes.
GftCheckConfig refine(const GftCheckConfig& cfg);

}  // namespace heislac
