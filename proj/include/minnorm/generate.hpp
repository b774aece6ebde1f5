#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "minnorm/core.hpp"

// Deterministic random test systems: A = U diag(sigma) V with orthonormal
// factors drawn from a seeded engine, so the singular values (and hence the
// rank and condition number) are prescribed exactly up to roundoff. The
// right-hand side is A x_seed, optionally pushed out of the range of A by a
// controlled amount to produce inconsistent instances. The engine output is
// mapped to doubles with a fixed shift-and-scale, so a seed fully determines
// the generated bytes (std::uniform_real_distribution is
// implementation-defined; the raw mt19937_64 stream is not).

namespace minnorm {

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1, 1).
  double symmetric() { return 2.0 * unit() - 1.0; }

  /// Uniform integer in [lo, hi] via rejection-free scaling (bias < 2^-53).
  std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) {
    return lo + static_cast<std::uint64_t>(unit() * static_cast<double>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

struct GeneratorParams {
  std::size_t rows = 1;
  std::size_t cols = 1;
  std::size_t rank = 1;
  double condition = 1.0;   // ratio of largest to smallest nonzero singular value
  std::uint64_t seed = 0;
  double noise = 0.0;       // size of the out-of-range rhs component, relative to max(|b|, 1)
};

namespace detail {

inline std::vector<std::vector<double>> draw_orthonormal_set(SeededRng& rng, std::size_t count,
                                                             std::size_t dim) {
  std::vector<std::vector<double>> basis;
  basis.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    std::vector<double> v(dim);
    while (true) {
      for (double& e : v) e = rng.symmetric();
      // two Gram-Schmidt passes keep the set orthonormal to roundoff
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& u : basis) {
          const double proj = dot(v, u);
          for (std::size_t i = 0; i < dim; ++i) v[i] -= proj * u[i];
        }
      }
      const double n = norm2(v);
      if (n > 1e-6) {
        for (double& e : v) e /= n;
        break;
      }
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

inline LinearSystem generate_system(const GeneratorParams& p) {
  detail::require(p.rows >= 1 && p.cols >= 1, "generate_system: dimensions must be positive");
  detail::require(p.rank >= 1 && p.rank <= std::min(p.rows, p.cols),
                  "generate_system: rank must lie in [1, min(rows, cols)]");
  detail::require(p.condition >= 1.0 && std::isfinite(p.condition),
                  "generate_system: condition must be finite and at least 1");
  detail::require(p.noise >= 0.0 && std::isfinite(p.noise),
                  "generate_system: noise must be finite and nonnegative");

  SeededRng rng(p.seed);
  const auto left = detail::draw_orthonormal_set(rng, p.rank, p.rows);
  const auto right = detail::draw_orthonormal_set(rng, p.rank, p.cols);

  std::vector<double> sigma(p.rank, 1.0);
  for (std::size_t k = 1; k < p.rank; ++k)
    sigma[k] = std::pow(p.condition, -static_cast<double>(k) / (static_cast<double>(p.rank) - 1.0));

  std::vector<double> entries(p.rows * p.cols, 0.0);
  for (std::size_t k = 0; k < p.rank; ++k)
    for (std::size_t i = 0; i < p.rows; ++i) {
      const double lik = left[k][i] * sigma[k];
      for (std::size_t j = 0; j < p.cols; ++j) entries[i * p.cols + j] += lik * right[k][j];
    }
  DenseMatrix a(p.rows, p.cols, std::move(entries));

  std::vector<double> x_seed(p.cols);
  for (double& e : x_seed) e = rng.symmetric();
  auto b = matvec(a, x_seed);

  if (p.noise > 0.0 && p.rank < p.rows) {
    std::vector<double> z(p.rows);
    for (double& e : z) e = rng.symmetric();
    // project z onto the orthogonal complement of range(A) = span(left)
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : left) {
        const double proj = dot(z, u);
        for (std::size_t i = 0; i < p.rows; ++i) z[i] -= proj * u[i];
      }
    const double zn = norm2(z);
    if (zn > 1e-9) {
      const double target = p.noise * std::max(norm2(b), 1.0);
      for (std::size_t i = 0; i < p.rows; ++i) b[i] += target * z[i] / zn;
    }
  }

  return LinearSystem(std::move(a), std::move(b));
}

}  // namespace minnorm
