#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>

namespace heislac {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Pairwise (cascade) summation; error grows like log n instead of n.
template <class T>
T pairwise_sum(std::span<const T> v) {
  const std::size_t n = v.size();
  if (n <= 32) {
    T s{};
    for (const auto& x : v) s += x;
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

template <class Container>
auto pairwise_sum(const Container& c) {
  using T = typename Container::value_type;
  return pairwise_sum(std::span<const T>(c.data(), c.size()));
}

/// exp(-2 pi i t)
inline std::complex<double> unit_phase(double t) {
  const double a = -kTwoPi * (t - std::round(t));
  return {std::cos(a), std::sin(a)};
}

}  // namespace heislac
