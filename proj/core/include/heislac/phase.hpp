#pragma once

namespace heislac {

/// Phase of the oscillatory kernels. circle: (x + y) sqrt(1 - (x - y)^2).
/// general: (e u + (x + y)) sqrt(1 - u^2) + b 2^{k1-k2} u^2 + d 2^{k2-k1} (1 - u^2), u = x - y.
struct PhaseSpec {
  enum class Kind { circle, general };
  Kind kind = Kind::circle;
  double b = 0.0;
  double d = 0.0;
  double e = 0.0;
  int k1 = 0;
  int k2 = 0;

  static PhaseSpec circle() { return {}; }
  static PhaseSpec general(double b, double d, double e, int k1, int k2) { return {Kind::general, b, d, e, k1, k2}; }
};

/// Largest |x - y| accepted by the evaluators (support of eta_c).
inline constexpr double kMaxPhaseOffset = 0.75;

double phase_eval(const PhaseSpec& p, double x, double y);
double phase_dx(const PhaseSpec& p, double x, double y);
double phase_dy(const PhaseSpec& p, double x, double y);
/// Mixed derivative d^2 Phi / dx dy.
double phase_hessian(const PhaseSpec& p, double x, double y);
/// d^2/dy^2 of the mixed derivative; general kind only.
double phase_hessian_dy2(const PhaseSpec& p, double x, double y);

}  // namespace heislac
