#include "heislac/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace heislac {

bool Matrix2::is_finite() const {
  return std::isfinite(a11) && std::isfinite(a12) && std::isfinite(a21) && std::isfinite(a22);
}

double Matrix2::max_abs() const {
  return std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
}

MatrixParts decompose(const Matrix2& a) {
  const double off_sym = 0.5 * (a.a12 + a.a21);
  const double off_skew = 0.5 * (a.a12 - a.a21);
  return {Matrix2{a.a11, off_sym, off_sym, a.a22}, Matrix2{0.0, off_skew, -off_skew, 0.0}};
}

MatrixClassification classify(const Matrix2& a, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("classify: tol must be positive");
  if (!a.is_finite()) throw std::invalid_argument("classify: matrix has non-finite entries");

  MatrixClassification out;
  const double scale = a.max_abs();
  if (scale == 0.0) return out;  // c != 0 is required for both forms

  const double eps = tol * scale;
  const bool diagonal = std::abs(a.a12) <= eps && std::abs(a.a21) <= eps;
  if (!diagonal) return out;

  const double b = a.a11;
  const double d = a.a22;
  // c != 0 forces b and d nonzero with a common sign.
  if (std::abs(b) <= eps || std::abs(d) <= eps || (b > 0) != (d > 0)) return out;

  if (std::abs(b - d) <= eps) {
    out.circular_bounded = false;
    out.elliptic_bounded = false;
    out.witness_c = b;
    out.witness_a = 0;
    return out;
  }

  // d / b = 4^a
  const double expo = 0.5 * std::log2(d / b);
  const double rounded = std::round(expo);
  if (std::abs(expo - rounded) <= tol) {
    out.elliptic_bounded = false;
    out.witness_c = b;
    out.witness_a = static_cast<int>(rounded);
  }
  return out;
}

std::string MatrixClassification::summary() const {
  std::ostringstream os;
  os << "circular: " << (circular_bounded ? "BOUNDED" : "UNBOUNDED")
     << ", elliptic: " << (elliptic_bounded ? "BOUNDED" : "UNBOUNDED");
  if (witness_c) {
    os << " (c=" << *witness_c;
    if (witness_a) os << ", a=" << *witness_a;
    os << ")";
  }
  return os.str();
}

QuadraticForm shear_coefficients(const Matrix2& sym) {
  if (!sym.is_symmetric()) throw std::invalid_argument("shear_coefficients: matrix is not symmetric");
  return {0.5 * sym.a11, sym.a12, 0.5 * sym.a22};
}

}  // namespace heislac
