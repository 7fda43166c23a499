#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heislac/experiments.hpp"
#include "heislac/report.hpp"

// Report builders shared by the command-line tool and the acceptance binary.
// Each runs one experiment, records every number it judges, and adds one
// clause per acceptance condition. Runtimes are recorded as "seconds".

namespace heislac {

ExperimentReport classify_report(const Matrix2& a, double tol = kDefaultClassifyTol);

/// Numeric dichotomy scan against classify over a matrix list.
ExperimentReport dichotomy_report(const std::vector<LabeledMatrix>& suite = curated_matrix_suite(),
                                  const DichotomyConfig& cfg = {});

/// |measure_fourier(0, 0, xi3)| for the given matrix entries against j, with
/// the degenerate-pair verdict. For b 4^k1 = d 4^k2, e = 0 the modulus must be
/// pi/2 within `tol` at xi3 = +-2^j.
struct MeasureDecayConfig {
  double b = 1.0;
  double d = 1.0;
  double e = 0.0;
  int k1 = 0;
  int k2 = 0;
  int j_lo = 4;
  int j_hi = 12;
  double tol = 1e-10;
  double degenerate_slope = -0.05;
  double decay_slope = -0.22;
};
ExperimentReport measure_decay_report(const MeasureDecayConfig& cfg = {});

ExperimentReport envelope_report(const EnvelopeConfig& cfg = {}, double max_slope = -0.22,
                                 double max_residual = 0.15);

/// Operator-norm sweeps plus the dense singular-value cross-check.
struct OpNormCheckConfig {
  std::vector<SweepConfig> sweeps;
  bool svd_cross_check = true;
  std::size_t svd_max_dim = 512;
  double svd_tol = 1e-6;

  static OpNormCheckConfig standard();
};
ExperimentReport opnorm_report(const OpNormCheckConfig& cfg);

/// Ratio law for A = I over m in [m_lo, m_hi] and, when `compare` is set,
/// the same protocol for the comparison matrix (A = J by default).
struct CounterexampleRun {
  CounterexampleSpec base;
  int m_lo = 2;
  int m_hi = 6;
  bool compare = true;
  Matrix2 comparison = Matrix2::heisenberg_j();
  double band = 2.0;
  double comparison_growth = 1.5;
  double oracle_factor = 1.5;
};
ExperimentReport counterexample_report(const CounterexampleRun& run);

/// Plancherel and convolution identities at the given resolution and after
/// one refinement step.
ExperimentReport gft_report(const GftCheckConfig& cfg = {}, double limit = 0.05);

/// Littlewood-Paley checks: telescoping identities, projection
/// orthogonality, and reconstruction / route agreement of lp_project.
struct LpCheckConfig {
  int telescoping_levels = 10;
  std::size_t cells = 64;
  int reconstruction_levels = 4;
  std::uint64_t seed = 7;
};
ExperimentReport lp_report(const LpCheckConfig& cfg = {});

/// Exact and finite-difference structural identities: decomposition, cutoff
/// telescoping, P^1 orthogonality, Hessian orders, and the conjugated route of
/// the averages against the direct one.
struct StructuralConfig {
  std::uint64_t seed = 11;
  std::size_t samples = 64;
  double telescoping_tol = 1e-14;
  double min_order = 1.9;
  double transport_factor = 10.0;
};
ExperimentReport structural_report(const StructuralConfig& cfg = {});

/// Observed finite-difference order of phase_hessian and phase_hessian_dy2 at
/// one point, from steps h and h/2.
struct HessianOrders {
  double hessian = 0.0;
  double hessian_dy2 = 0.0;
};
HessianOrders hessian_fd_orders(const PhaseSpec& p, double x, double y, double h = 0.02);

/// Smooth compactly supported test bump used by the route comparisons.
double smooth_test_bump(double x1, double x2, double x3);

}  // namespace heislac
