#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "minnorm/core.hpp"
#include "minnorm/lagrange.hpp"
#include "minnorm/solver.hpp"

// Coordinate relaxation on the Gram system [w] mu = b. Each coordinate
// update minimizes the quadratic energy along one axis, which is
// Gauss-Seidel iteration: within a sweep the updated values are used
// immediately. A zero diagonal w_{kk} means row k of A is identically zero;
// that coordinate is frozen at zero, and a nonzero b_k there marks the
// instance as containing an unsatisfiable equation.

namespace minnorm {

struct RelaxationSweepResult {
  MultiplierState state;
  // Sum of absolute multiplier changes over the sweep, in lambda units
  // (twice the mu change sum, since lambda = -2 mu).
  double change_sum = 0.0;
  bool skipped_inconsistent_row = false;
};

inline RelaxationSweepResult relaxation_sweep(MultiplierState state, const GramOperator& gram,
                                              std::span<const double> b,
                                              double inconsistency_tolerance = 1e-10) {
  const std::size_t m = gram.size();
  detail::require(state.mu.size() == m, "relaxation_sweep: state length mismatch");
  detail::require(b.size() == m, "relaxation_sweep: rhs length mismatch");

  auto& mu = state.mu;
  const auto diag = gram.diagonal();
  double change = 0.0;
  bool skipped = false;

  if (gram.has_explicit()) {
    const DenseMatrix& w = gram.explicit_matrix();
    for (std::size_t k = 0; k < m; ++k) {
      const double wkk = diag[k];
      if (wkk == 0.0) {
        if (std::abs(b[k]) > inconsistency_tolerance) skipped = true;
        continue;
      }
      const double coupled = dot(w.row(k), mu) - wkk * mu[k];
      const double next = (b[k] - coupled) / wkk;
      change += std::abs(next - mu[k]);
      mu[k] = next;
    }
  } else {
    // Matrix-free sweep: maintain y = A^t mu so that <w_k, mu> = <a_k, y>.
    const DenseMatrix& a = gram.source();
    auto y = matvec_transpose(a, mu);
    for (std::size_t k = 0; k < m; ++k) {
      const double wkk = diag[k];
      if (wkk == 0.0) {
        if (std::abs(b[k]) > inconsistency_tolerance) skipped = true;
        continue;
      }
      const auto row = a.row(k);
      const double coupled = dot(row, y) - wkk * mu[k];
      const double next = (b[k] - coupled) / wkk;
      const double delta = next - mu[k];
      change += std::abs(delta);
      mu[k] = next;
      for (std::size_t n = 0; n < row.size(); ++n) y[n] += delta * row[n];
    }
  }

  state.passes += 1;
  return {std::move(state), 2.0 * change, skipped};
}

struct RelaxationOutcome {
  MultiplierState state;
  double change_sum = std::numeric_limits<double>::infinity();
  Termination termination = Termination::MaxPasses;
};

inline RelaxationOutcome iterate_relaxation(const GramOperator& gram, std::span<const double> b,
                                            const SolverConfig& config,
                                            detail::IterateTracker* tracker = nullptr,
                                            detail::EnergyMonitor* energy = nullptr) {
  validate(config);
  RelaxationOutcome outcome;
  outcome.state.mu.assign(gram.size(), 0.0);
  if (tracker) tracker->observe(outcome.state.mu, 0);

  bool inconsistent = false;
  while (outcome.state.passes < config.max_passes) {
    auto sweep = relaxation_sweep(std::move(outcome.state), gram, b, config.tolerance);
    outcome.state = std::move(sweep.state);
    outcome.change_sum = sweep.change_sum;
    inconsistent = inconsistent || sweep.skipped_inconsistent_row;
    if (energy) energy->step(quadratic_energy(gram, outcome.state.mu, b));
    if (tracker) tracker->observe(outcome.state.mu, outcome.state.passes);
    if (outcome.change_sum < config.tolerance) {
      outcome.termination = Termination::Converged;
      break;
    }
  }
  if (inconsistent) outcome.termination = Termination::InconsistentRow;
  return outcome;
}

inline SolveReport solve_relaxation(const LinearSystem& system, const SolverConfig& config) {
  validate(config);
  GramOperator gram(system.matrix(), config.gram_explicit_threshold);
  detail::IterateTracker tracker(system);
  detail::EnergyMonitor energy;
  auto outcome = iterate_relaxation(gram, system.rhs(), config, &tracker, &energy);
  const StopRule stopped_by = outcome.change_sum < config.tolerance ? StopRule::ChangeSum
                                                                    : StopRule::None;
  return detail::finish_report(system, outcome.state, outcome.termination, stopped_by, tracker,
                               energy.max_increase);
}

}  // namespace minnorm
