#pragma once

#include <random>

#include "spinlie/operator_core.hpp"

namespace spinlie::testing {

inline ComplexMatrix random_complex(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(n, n);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_complex(n, rng);
  return 0.5 * (g + g.adjoint());
}

inline ComplexMatrix random_skew(std::size_t n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_complex(n, rng);
  return 0.5 * (g - g.adjoint());
}

inline ComplexMatrix random_skew_traceless(std::size_t n, std::mt19937_64& rng) {
  ComplexMatrix x = random_skew(n, rng);
  x -= x.trace() / static_cast<double>(n) * identity(n);
  return x;
}

// Numerical rank of matrices viewed as real vectors, by SVD.
inline std::size_t real_rank(const std::vector<ComplexMatrix>& ms, double rel_tol = 1e-9) {
  if (ms.empty()) return 0;
  const Eigen::Index len = 2 * ms.front().size();
  Eigen::MatrixXd a(len, static_cast<Eigen::Index>(ms.size()));
  for (std::size_t k = 0; k < ms.size(); ++k) a.col(static_cast<Eigen::Index>(k)) = as_real_vector(ms[k]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > rel_tol * std::max(1.0, s(0))) ++r;
  return r;
}

}  // namespace spinlie::testing
