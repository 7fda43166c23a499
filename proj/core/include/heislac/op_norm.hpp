#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>

#include "heislac/osc_operator.hpp"

namespace heislac {

struct OpNormResult {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Largest singular value by block power iteration on the Gram operator (the
/// smaller of A*A and AA*) with a Rayleigh-Ritz step. Stops when the top Ritz
/// pair has ||G v - mu v|| <= tol * mu.
OpNormResult op_norm(const Eigen::MatrixXcd& a, double tol = 1e-10, int max_iter = 20000,
                     std::uint64_t seed = 0x5eed);

/// Dense SVD reference, for small matrices.
double dense_spectral_norm(const Eigen::MatrixXcd& a);

/// L^2 -> L^2 norm of a block-diagonal operator: max over blocks.
OpNormResult op_norm(std::span<const OscBlock> blocks, double tol = 1e-10);

}  // namespace heislac
