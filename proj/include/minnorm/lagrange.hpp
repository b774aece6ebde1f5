#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "minnorm/core.hpp"

// Multiplier reformulation of the minimum-norm problem.
//
// Minimizing the solution norm Q = <x, x> subject to A x = b couples x to a
// multiplier vector lambda through x_n = -0.5 <lambda, a_n> (a_n = n-th
// column of A), which turns the problem into a quadratic in lambda alone:
//
//   phi(lambda) = -0.25 <lambda, [w] lambda> - <lambda, b>,   [w] = A A^t.
//
// phi as written is concave wherever [w] has positive curvature, so its
// stationary point is a maximum. The solvers therefore work with the scaled
// variable mu = -lambda / 2, for which stationarity becomes the symmetric
// positive-semidefinite system [w] mu = b with the convex energy
// 0.5 <mu, [w] mu> - <mu, b>, and the recovered solution is x = A^t mu.
// Reported multipliers are always lambda = -2 mu.

namespace minnorm {

/// w_{lm}: dot product of rows l and m of the coefficient matrix.
inline double gram_entry(const DenseMatrix& a, std::size_t l, std::size_t m) {
  detail::require(l < a.rows() && m < a.rows(), "gram_entry: row index out of range");
  return dot(a.row(l), a.row(m));
}

/// Explicit M x M row Gram matrix [w] = A A^t. The upper triangle is
/// computed once and mirrored, so the result is symmetric to the last bit.
inline DenseMatrix gram_matrix(const DenseMatrix& a) {
  const std::size_t m = a.rows();
  std::vector<double> w(m * m);
  for (std::size_t l = 0; l < m; ++l) {
    for (std::size_t k = l; k < m; ++k) {
      const double v = gram_entry(a, l, k);
      w[l * m + k] = v;
      w[k * m + l] = v;
    }
  }
  return {m, m, std::move(w)};
}

/// [w] v without forming [w]: A (A^t v). Matches the explicit product to
/// roundoff and keeps memory linear in the matrix size.
inline std::vector<double> gram_apply(const DenseMatrix& a, std::span<const double> v) {
  detail::require(v.size() == a.rows(), "gram_apply: vector length must equal row count");
  return matvec(a, matvec_transpose(a, v));
}

/// Applies [w] = A A^t, caching the explicit matrix for small row counts and
/// falling back to the matrix-free product above it. The diagonal w_{kk} is
/// always cached; it is the set of row norms the relaxation sweep divides by.
class GramOperator {
 public:
  explicit GramOperator(DenseMatrix source, std::size_t explicit_threshold = 512)
      : source_(std::move(source)) {
    const std::size_t m = source_.rows();
    diagonal_.resize(m);
    for (std::size_t k = 0; k < m; ++k) diagonal_[k] = gram_entry(source_, k, k);
    if (m <= explicit_threshold) explicit_.emplace(gram_matrix(source_));
  }

  const DenseMatrix& source() const { return source_; }
  std::size_t size() const { return source_.rows(); }
  bool has_explicit() const { return explicit_.has_value(); }

  const DenseMatrix& explicit_matrix() const {
    detail::require(explicit_.has_value(), "GramOperator: explicit matrix not cached");
    return *explicit_;
  }

  std::span<const double> diagonal() const { return diagonal_; }

  std::vector<double> apply(std::span<const double> v) const {
    detail::require(v.size() == size(), "GramOperator::apply: dimension mismatch");
    if (explicit_) return matvec(*explicit_, v);
    return gram_apply(source_, v);
  }

 private:
  DenseMatrix source_;
  std::optional<DenseMatrix> explicit_;
  std::vector<double> diagonal_;
};

/// x_n = -0.5 <lambda, a_n>, i.e. x = -0.5 A^t lambda.
inline std::vector<double> recover_x(const DenseMatrix& a, std::span<const double> lambda) {
  detail::require(lambda.size() == a.rows(), "recover_x: multiplier length must equal row count");
  auto x = matvec_transpose(a, lambda);
  for (double& e : x) e *= -0.5;
  return x;
}

/// The multiplier functional phi(lambda) = -0.25 <lambda, [w] lambda> - <lambda, b>.
inline double phi(const DenseMatrix& a, std::span<const double> b, std::span<const double> lambda) {
  detail::require(b.size() == a.rows(), "phi: rhs length must equal row count");
  detail::require(lambda.size() == a.rows(), "phi: multiplier length must equal row count");
  return -0.25 * dot(lambda, gram_apply(a, lambda)) - dot(lambda, b);
}

/// Exact gradient of phi: g = -0.5 [w] lambda - b.
inline std::vector<double> phi_gradient(const DenseMatrix& a, std::span<const double> b,
                                        std::span<const double> lambda) {
  detail::require(b.size() == a.rows(), "phi_gradient: rhs length must equal row count");
  detail::require(lambda.size() == a.rows(),
                  "phi_gradient: multiplier length must equal row count");
  auto g = gram_apply(a, lambda);
  for (std::size_t m = 0; m < g.size(); ++m) g[m] = -0.5 * g[m] - b[m];
  return g;
}

/// Convex energy 0.5 <mu, [w] mu> - <mu, b> minimized by both iterative
/// backends; equals -phi(lambda)/2 under lambda = -2 mu.
inline double quadratic_energy(const GramOperator& gram, std::span<const double> mu,
                               std::span<const double> b) {
  detail::require(b.size() == gram.size(), "quadratic_energy: rhs length mismatch");
  return 0.5 * dot(mu, gram.apply(mu)) - dot(mu, b);
}

/// Iteration state shared by the solvers: the scaled multipliers mu
/// (lambda = -2 mu) and the number of completed passes.
struct MultiplierState {
  std::vector<double> mu;
  std::size_t passes = 0;

  std::vector<double> lambda() const {
    std::vector<double> l(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) l[i] = -2.0 * mu[i];
    return l;
  }
};

}  // namespace minnorm
