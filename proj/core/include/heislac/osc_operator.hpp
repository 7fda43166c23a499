#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <vector>

#include "heislac/phase.hpp"

namespace heislac {

/// Discretization controls for one oscillatory operator.
struct OscGridSpec {
  /// Points per period of the oscillation on the kernel support.
  double points_per_period = 8.0;
  /// Points per bump width 2^{-s} and per width of the P^2 / m cutoffs.
  double points_per_bump = 16.0;
  /// Cap on every 1-D grid; exceeding it raises ResolutionError.
  std::size_t max_points = 4096;
  /// y-window used when neither m nor ell2 localizes y.
  double y_lo = -1.0;
  double y_hi = 1.0;
  /// Explicit grid sizes (per block); rejected when below the resolution rule.
  std::optional<std::size_t> nx;
  std::optional<std::size_t> ny;
};

/// One discretized operator C^s_K or C^{s,m}_{A,K}, optionally composed with
/// P^2 (multiplication by phi(lambda 2^{k1+k2-ell2} y)) and P^1 (Fourier
/// multiplier phi(2^{-ell1} xi)) on the right.
struct OscKernelSpec {
  PhaseSpec phase;
  /// The product lambda 2^{k1+k2}.
  double big_lambda = 1024.0;
  int s = 0;
  std::optional<int> m;
  std::optional<int> ell1;
  std::optional<int> ell2;
  OscGridSpec grid;

  void validate() const;
};

/// Quadrature matrix of one block: (T f)(x_i) ~ sum_j matrix(i, j) f(y_j).
/// With P^1 the columns live on the padded periodic y-grid.
struct OscBlock {
  Eigen::MatrixXcd matrix;
  std::vector<double> x;
  std::vector<double> y;
  double hx = 0.0;
  double hy = 0.0;

  /// Matrix whose spectral norm is the L^2 -> L^2 norm of the block.
  Eigen::MatrixXcd l2_matrix() const { return matrix * std::sqrt(hx / hy); }
};

/// The operator split into blocks with disjoint x- and y-supports (so the
/// operator norm is the maximum over blocks). Throws ResolutionError when the
/// resolution rule needs more than grid.max_points points.
std::vector<OscBlock> build_osc_blocks(const OscKernelSpec& spec);

/// Single dense block covering the whole support.
OscBlock build_osc_operator(const OscKernelSpec& spec);

/// Grid step demanded by the resolution rule for the x- and y-grids.
struct OscResolution {
  double hx = 0.0;
  double hy = 0.0;
};
OscResolution required_steps(const OscKernelSpec& spec);

}  // namespace heislac
