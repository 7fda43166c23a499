#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "heislac/grid.hpp"

namespace heislac {

/// Uniform midpoint grid on [lo, hi] for the representation space L^2(R).
struct Grid1D {
  double lo = -8.0;
  double hi = 8.0;
  std::size_t n = 128;

  double step() const { return (hi - lo) / static_cast<double>(n); }
  double center(std::size_t i) const { return lo + (static_cast<double>(i) + 0.5) * step(); }
  void validate() const;
};

/// Discretized f^(lambda): kernel(a, b) = F^{2,3} f(x_a - y_b, lambda (x_a + y_b) / 2, lambda / 4).
struct GFTOperator {
  double lambda = 0.0;
  Grid1D grid;
  Eigen::MatrixXcd kernel;
};

/// The group Fourier transform of f at lambda != 0. Records an aliasing
/// warning when lambda (x + y) / 2 or lambda / 4 exceeds the Nyquist band of
/// the grid of f.
GFTOperator gft(const GridFunction3& f, double lambda, const Grid1D& grid = {}, Diagnostics* diag = nullptr);

/// (int int |kernel|^2)^{1/2} by the midpoint rule.
double hs_norm(const GFTOperator& op);

/// Composition of kernels: (A B)(x, z) = int A(x, y) B(y, z) dy. Grids must match.
GFTOperator compose(const GFTOperator& a, const GFTOperator& b);

/// Symmetric log-spaced lambda nodes in [lo, hi] and their negatives, with
/// trapezoid weights in log lambda; weight includes the d lambda Jacobian.
struct LambdaQuadrature {
  std::vector<double> nodes;
  std::vector<double> weights;

  static LambdaQuadrature log_spaced(double lo = 1.0 / 64.0, double hi = 64.0, std::size_t per_octave = 8);
  double cutoff() const;  // smallest |lambda|
};

struct PlancherelResult {
  double lhs = 0.0;  // ||f||_2^2
  double rhs = 0.0;  // (1/4) int ||f^(lambda)||_HS^2 |lambda| d lambda over the nodes
  double near_zero_estimate = 0.0;  // omitted |lambda| < cutoff contribution (not added to rhs)
  double relative_discrepancy() const { return lhs > 0.0 ? std::abs(lhs - rhs) / lhs : std::abs(rhs); }
};

PlancherelResult plancherel_check(const GridFunction3& f, const LambdaQuadrature& lq = LambdaQuadrature::log_spaced(),
                                  const Grid1D& grid = {}, Diagnostics* diag = nullptr);

/// HS distance between gft(f *_J g) and gft(f) gft(g), divided by
/// hs_norm(gft f) * hs_norm(gft g). Zero when g vanishes. The first two axes
/// of f and g must be uniform with a common step.
double convolution_check(const GridFunction3& f, const GridFunction3& g, double lambda, const Grid1D& grid = {},
                         Diagnostics* diag = nullptr);

}  // namespace heislac
