#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "minnorm/core.hpp"

namespace minnorm {

struct EigenDecomposition {
  std::vector<double> values;  // descending
  DenseMatrix vectors;         // columns are orthonormal eigenvectors
};

/// Classical cyclic Jacobi eigendecomposition of a symmetric matrix.
/// Sweeps rotate every off-diagonal pair until the largest off-diagonal
/// magnitude falls below 1e-12 * ||W||_F.
inline EigenDecomposition jacobi_eigen(const DenseMatrix& w) {
  const std::size_t n = w.rows();
  detail::require(w.cols() == n, "jacobi_eigen: matrix must be square");

  double scale = 0.0;
  for (double e : w.entries()) scale = std::max(scale, std::abs(e));
  const double sym_tol = 1e-12 * std::max(1.0, scale);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t k = l + 1; k < n; ++k)
      detail::require(std::abs(w(l, k) - w(k, l)) <= sym_tol,
                      "jacobi_eigen: matrix must be symmetric");

  std::vector<double> a(w.entries().begin(), w.entries().end());
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  double frob = 0.0;
  for (double e : a) frob += e * e;
  frob = std::sqrt(frob);
  const double off_tol = 1e-12 * frob;

  bool converged = false;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a[p * n + q]));
    if (off <= off_tol) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);  // avoids theta^2 overflow
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[r * n + p];
          const double arq = a[r * n + q];
          a[r * n + p] = a[p * n + r] = arp - s * (arq + tau * arp);
          a[r * n + q] = a[q * n + r] = arq + s * (arp - tau * arq);
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v[r * n + p];
          const double vrq = v[r * n + q];
          v[r * n + p] = vrp - s * (vrq + tau * vrp);
          v[r * n + q] = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }
  if (!converged) throw std::runtime_error("jacobi_eigen: rotation sweep limit exceeded");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a[i * n + i] > a[j * n + j]; });

  EigenDecomposition out{std::vector<double>(n), DenseMatrix::identity(n)};
  std::vector<double> sorted_vectors(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a[order[j] * n + order[j]];
    for (std::size_t i = 0; i < n; ++i) sorted_vectors[i * n + j] = v[i * n + order[j]];
  }
  out.vectors = DenseMatrix(n, n, std::move(sorted_vectors));
  return out;
}

}  // namespace minnorm
