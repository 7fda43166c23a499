#pragma once

#include <optional>
#include <string_view>

namespace heislac {

enum class Cutoff { psi, phi, psi_c, eta_c, beta };

/// Smooth step: 0 for x <= 0, 1 for x >= 1, C^inf in between.
double smooth_step(double x);

/// psi == 1 on [-1, 1], supp psi in [-2, 2].
double psi(double t);
/// phi(t) = psi(t) - psi(2t), supported in 1/2 <= |t| <= 2.
double phi(double t);
double psi_c(double t);
/// eta_c == 1 on [-1/2, 1/2], supp eta_c in [-3/4, 3/4].
double eta_c(double t);
/// beta(x) = eta_c(x) - eta_c(2x), supported in 1/4 <= |x| <= 3/4.
double beta(double x);

double eval_cutoff(Cutoff which, double t);
std::optional<Cutoff> parse_cutoff(std::string_view name);
std::string_view cutoff_name(Cutoff which);

/// sum_{l=-L}^{L} phi(t / 2^l). Throws for t == 0 or L < 0.
double partition_check(double t, int L);

/// sum_{s=0}^{S} beta(2^s x).
double beta_partition(double x, int S);

}  // namespace heislac
