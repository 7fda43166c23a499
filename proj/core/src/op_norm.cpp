#include "heislac/op_norm.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace heislac {

namespace {

// Gram matrix is formed explicitly below this size.
constexpr Eigen::Index kExplicitGram = 1024;
constexpr Eigen::Index kBlock = 4;

}  // namespace

OpNormResult op_norm(const Eigen::MatrixXcd& a, double tol, int max_iter, std::uint64_t seed) {
  if (!(tol > 0.0)) throw std::invalid_argument("op_norm: tol must be positive");
  if (!a.allFinite()) throw std::invalid_argument("op_norm: non-finite entries");
  OpNormResult r;
  if (a.size() == 0) {
    r.converged = true;
    return r;
  }
  const bool wide = a.rows() < a.cols();
  const Eigen::Index n = wide ? a.rows() : a.cols();

  Eigen::MatrixXcd gram;
  const bool explicit_gram = n <= kExplicitGram;
  if (explicit_gram) gram = wide ? Eigen::MatrixXcd(a * a.adjoint()) : Eigen::MatrixXcd(a.adjoint() * a);
  auto apply = [&](const Eigen::MatrixXcd& v) -> Eigen::MatrixXcd {
    if (explicit_gram) return gram * v;
    if (wide) return a * (a.adjoint() * v);
    return a.adjoint() * (a * v);
  };

  // Block power iteration with a Rayleigh-Ritz step; a small block keeps
  // clustered top singular values from stalling convergence.
  const Eigen::Index b = std::min<Eigen::Index>(kBlock, n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd v(n, b);
  for (Eigen::Index j = 0; j < b; ++j)
    for (Eigen::Index i = 0; i < n; ++i) v(i, j) = {nd(rng), nd(rng)};
  v = Eigen::HouseholderQR<Eigen::MatrixXcd>(v).householderQ() * Eigen::MatrixXcd::Identity(n, b);

  double mu = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    const Eigen::MatrixXcd w = apply(v);
    r.iterations = it;
    const Eigen::MatrixXcd h = v.adjoint() * w;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (h + h.adjoint()));
    mu = es.eigenvalues()(b - 1);
    const Eigen::VectorXcd c = es.eigenvectors().col(b - 1);
    if (w.norm() == 0.0) {
      // random start in the kernel; in practice only for A = 0
      r.converged = a.norm() == 0.0;
      return r;
    }
    if (mu > 0.0 && (w * c - mu * (v * c)).norm() <= tol * mu) {
      r.converged = true;
      break;
    }
    v = Eigen::HouseholderQR<Eigen::MatrixXcd>(w).householderQ() * Eigen::MatrixXcd::Identity(n, b);
  }
  r.value = std::sqrt(std::max(mu, 0.0));
  return r;
}

double dense_spectral_norm(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

OpNormResult op_norm(std::span<const OscBlock> blocks, double tol) {
  OpNormResult best;
  best.converged = true;
  for (const auto& b : blocks) {
    const OpNormResult r = op_norm(b.l2_matrix(), tol);
    best.iterations += r.iterations;
    best.converged = best.converged && r.converged;
    best.value = std::max(best.value, r.value);
  }
  return best;
}

}  // namespace heislac
