#pragma once

#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "heislac/osc_operator.hpp"

namespace heislac {

struct DecayPoint {
  double parameter = 0.0;
  double value = 0.0;  // NaN when the point could not be computed
  bool in_fit = false;
  std::string note;  // why the point is outside the fit, if it is
};

/// Least-squares fit of log2(value) against the parameter.
struct DecayFit {
  std::string parameter_name;
  std::vector<DecayPoint> points;
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;

  std::size_t fitted() const;
  std::vector<std::string> exclusions() const;
};

/// Minimum number of points in a fit.
inline constexpr std::size_t kMinFitPoints = 4;
/// The smallest parameter values are pre-asymptotic and left out of the fit.
inline constexpr std::size_t kPreAsymptotic = 2;

/// Fits the points flagged in_fit. Throws when fewer than kMinFitPoints
/// remain or a fitted value is not positive and finite.
void refit(DecayFit& fit);

/// Builds a fit from (parameter, value) pairs, excluding the `skip_smallest`
/// smallest parameters and every non-finite or non-positive value.
DecayFit fit_decay(std::string name, const std::vector<double>& parameters, const std::vector<double>& values,
                   std::size_t skip_smallest = kPreAsymptotic);

/// CSV with columns parameter,value,log2_norm,slope_running. slope_running is
/// the slope of the fit over the fitted points up to and including the row.
void write_decay_csv(std::ostream& os, const DecayFit& fit);

/// Operator-norm sweep: builds each spec, takes the L^2 norm (max over
/// blocks), and fits. Under-resolved specs are excluded with the reported
/// minimum grid size.
DecayFit decay_sweep(std::string name, const std::vector<double>& parameters,
                     const std::vector<OscKernelSpec>& specs, double tol = 1e-10);

}  // namespace heislac
