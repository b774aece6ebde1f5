#pragma once

#include <cstddef>
#include <vector>

#include "minnorm/core.hpp"
#include "minnorm/eigen_jacobi.hpp"
#include "minnorm/lagrange.hpp"

namespace minnorm {

/// Minimum-norm least-squares solution through the row Gram matrix:
/// eigendecompose [w] = A A^t, invert the eigenvalues above
/// rank_tolerance * max_eigenvalue, zero the rest, and return
/// x = A^t [w]^+ b, which equals the Moore-Penrose solution A^+ b.
/// Independent of both iterative backends; used to cross-check them.
inline std::vector<double> pinv_solve(const LinearSystem& system, double rank_tolerance) {
  detail::require(rank_tolerance > 0.0, "pinv_solve: rank tolerance must be positive");
  const DenseMatrix& a = system.matrix();
  const auto& b = system.rhs();
  const std::size_t m = a.rows();

  const auto eig = jacobi_eigen(gram_matrix(a));
  const double lead = std::max(eig.values.front(), 0.0);
  const double cutoff = rank_tolerance * lead;

  std::vector<double> mu(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const double value = eig.values[j];
    if (!(value > cutoff)) continue;
    double projection = 0.0;
    for (std::size_t i = 0; i < m; ++i) projection += eig.vectors(i, j) * b[i];
    const double weight = projection / value;
    for (std::size_t i = 0; i < m; ++i) mu[i] += weight * eig.vectors(i, j);
  }
  return matvec_transpose(a, mu);
}

inline std::vector<double> pinv_solve(const LinearSystem& system) {
  return pinv_solve(system, 1e-12 * static_cast<double>(system.matrix().rows()));
}

}  // namespace minnorm
