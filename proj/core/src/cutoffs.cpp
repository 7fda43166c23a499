#include "heislac/cutoffs.hpp"

#include <cmath>
#include <stdexcept>

namespace heislac {

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

double psi(double t) { return smooth_step((4.0 - t * t) / 3.0); }
double phi(double t) { return psi(t) - psi(2.0 * t); }
double psi_c(double t) { return 1.0 - psi(t); }
double eta_c(double t) { return smooth_step((9.0 / 16.0 - t * t) / (5.0 / 16.0)); }
double beta(double x) { return eta_c(x) - eta_c(2.0 * x); }

double eval_cutoff(Cutoff which, double t) {
  switch (which) {
    case Cutoff::psi: return psi(t);
    case Cutoff::phi: return phi(t);
    case Cutoff::psi_c: return psi_c(t);
    case Cutoff::eta_c: return eta_c(t);
    case Cutoff::beta: return beta(t);
  }
  throw std::invalid_argument("eval_cutoff: unknown cutoff");
}

std::optional<Cutoff> parse_cutoff(std::string_view name) {
  if (name == "psi") return Cutoff::psi;
  if (name == "phi") return Cutoff::phi;
  if (name == "psi_c") return Cutoff::psi_c;
  if (name == "eta_c") return Cutoff::eta_c;
  if (name == "beta") return Cutoff::beta;
  return std::nullopt;
}

std::string_view cutoff_name(Cutoff which) {
  switch (which) {
    case Cutoff::psi: return "psi";
    case Cutoff::phi: return "phi";
    case Cutoff::psi_c: return "psi_c";
    case Cutoff::eta_c: return "eta_c";
    case Cutoff::beta: return "beta";
  }
  return "?";
}

double partition_check(double t, int L) {
  if (t == 0.0 || !std::isfinite(t)) throw std::invalid_argument("partition_check: t must be finite and nonzero");
  if (L < 0) throw std::invalid_argument("partition_check: L must be >= 0");
  double s = 0.0;
  for (int l = -L; l <= L; ++l) s += phi(std::ldexp(t, -l));
  return s;
}

double beta_partition(double x, int S) {
  if (S < 0) throw std::invalid_argument("beta_partition: S must be >= 0");
  double s = 0.0;
  for (int k = 0; k <= S; ++k) s += beta(std::ldexp(x, k));
  return s;
}

}  // namespace heislac
