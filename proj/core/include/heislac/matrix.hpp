#pragma once

#include <optional>
#include <string>

namespace heislac {

/// A 2x2 real matrix, row-major.
struct Matrix2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a21 = 0.0;
  double a22 = 0.0;

  static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Matrix2 diag(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }
  /// The Heisenberg twist [[0,-2],[2,0]].
  static Matrix2 heisenberg_j() { return {0.0, -2.0, 2.0, 0.0}; }
  static Matrix2 symmetric(double b, double e, double d) { return {b, e, e, d}; }

  Matrix2 transpose() const { return {a11, a21, a12, a22}; }
  bool is_finite() const;
  bool is_symmetric() const { return a12 == a21; }
  bool is_zero() const { return a11 == 0.0 && a12 == 0.0 && a21 == 0.0 && a22 == 0.0; }
  double max_abs() const;

  /// x^T M y
  double bilinear(double x1, double x2, double y1, double y2) const {
    return x1 * (a11 * y1 + a12 * y2) + x2 * (a21 * y1 + a22 * y2);
  }

  friend Matrix2 operator+(const Matrix2& a, const Matrix2& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
  }
  friend Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
    return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
  }
  friend Matrix2 operator*(double s, const Matrix2& a) {
    return {s * a.a11, s * a.a12, s * a.a21, s * a.a22};
  }
  friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

struct MatrixParts {
  Matrix2 sym;
  Matrix2 skew;
};

/// Symmetric/skew split: sym = (A + A^T)/2, skew = (A - A^T)/2.
MatrixParts decompose(const Matrix2& a);

/// Boundedness verdicts for the lacunary circular (one-parameter) and
/// elliptic (two-parameter) maximal operators attached to A, 1 < p < inf.
struct MatrixClassification {
  bool circular_bounded = true;
  bool elliptic_bounded = true;
  std::optional<double> witness_c;
  std::optional<int> witness_a;

  std::string summary() const;
};

inline constexpr double kDefaultClassifyTol = 1e-9;

/// Unbounded forms: A = cI (circular, and elliptic with a = 0) and
/// A = diag(c, c 4^a), a integer (elliptic). Entry comparisons are relative to
/// max|A_ij|; integrality of a is accepted when |a - round(a)| <= tol.
/// Throws std::invalid_argument on non-finite entries or tol <= 0.
MatrixClassification classify(const Matrix2& a, double tol = kDefaultClassifyTol);

/// Coefficients of (1/2) x^T S x = c11 x1^2 + c12 x1 x2 + c22 x2^2.
struct QuadraticForm {
  double c11 = 0.0;
  double c12 = 0.0;
  double c22 = 0.0;

  double operator()(double x1, double x2) const { return c11 * x1 * x1 + c12 * x1 * x2 + c22 * x2 * x2; }
  bool is_zero() const { return c11 == 0.0 && c12 == 0.0 && c22 == 0.0; }
};

/// (b/2, e, d/2) for sym = [[b, e], [e, d]]. Throws on non-symmetric input.
QuadraticForm shear_coefficients(const Matrix2& sym);

}  // namespace heislac
