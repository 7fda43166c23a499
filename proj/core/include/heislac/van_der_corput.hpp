#pragma once

#include <optional>
#include <vector>

namespace heislac {

/// Samples of a phase and an amplitude on a uniform grid of [a, b].
struct VdcInput {
  std::vector<double> x;
  std::vector<double> phase;
  std::vector<double> amplitude;
  double lambda = 1.0;
  int k = 1;
  /// For k = 1: how many times phase'' may change sign.
  std::optional<int> sign_changes;
};

struct VdcResult {
  double lhs = 0.0;       // |int exp(i lambda phase) amplitude|
  double rhs = 0.0;       // c lambda^{-1/k} (|amplitude(b)| + int |amplitude'|)
  double constant = 0.0;  // c
};

/// c_k = 5 2^k; for k = 1 multiplied by (B + 1).
double vdc_constant(int k, int sign_changes = 0);

/// Throws std::invalid_argument when the samples violate the hypotheses
/// (|phase^(k)| < 1 somewhere, phase'' changing sign more than B times for
/// k = 1) or when lambda * phase is under-resolved by the grid.
VdcResult vdc_check(const VdcInput& in);

}  // namespace heislac
