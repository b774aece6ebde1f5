#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "minnorm/core.hpp"
#include "minnorm/lagrange.hpp"
#include "minnorm/solver.hpp"

// Fletcher-Reeves conjugate gradient on the Gram system, minimizing the
// convex energy E(mu) = 0.5 <mu, [w] mu> - <mu, b>. Directions restart at
// the steepest descent every M iterations. The default line search samples
// E at the current point and at +/- delta along the direction and steps to
// the vertex of the fitted parabola, which is exact for quadratics up to
// roundoff; the "exact" mode computes the same step analytically and serves
// as the verification path.

namespace minnorm {

/// beta = |grad_new|^2 / |grad_old|^2.
inline double fr_beta(std::span<const double> grad_new, std::span<const double> grad_old) {
  detail::require(grad_new.size() == grad_old.size(), "fr_beta: dimension mismatch");
  const double denom = dot(grad_old, grad_old);
  detail::require(denom > 0.0, "fr_beta: previous gradient must be nonzero");
  return dot(grad_new, grad_new) / denom;
}

/// d = -grad on the first iteration (no previous direction), otherwise
/// d = -grad + beta * prev_direction.
inline std::vector<double> direction_update(std::span<const double> grad,
                                            std::optional<std::span<const double>> prev_direction,
                                            double beta) {
  std::vector<double> d(grad.size());
  if (!prev_direction) {
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = -grad[i];
    return d;
  }
  detail::require(prev_direction->size() == grad.size(), "direction_update: dimension mismatch");
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = -grad[i] + beta * (*prev_direction)[i];
  return d;
}

/// Step to the vertex of the parabola through three samples of the
/// minimized functional taken at -delta, 0, +delta along the direction:
/// s = (f(-delta) - f(+delta)) * delta / (2 * (f(-delta) - 2 f(0) + f(+delta))).
/// Returns nothing when the sampled curvature is non-positive or below
/// 1e-12 * (1 + |f(0)|): the direction is flat (a Gram null direction or
/// roundoff-dominated samples), and no minimizer exists along it.
inline std::optional<double> parabolic_step(double phi_minus, double phi_center, double phi_plus,
                                            double delta) {
  detail::require(delta > 0.0 && std::isfinite(delta), "parabolic_step: delta must be positive");
  const double curvature = phi_minus - 2.0 * phi_center + phi_plus;
  if (curvature <= 1e-12 * (1.0 + std::abs(phi_center))) return std::nullopt;
  return (phi_minus - phi_plus) * delta / (2.0 * curvature);
}

struct CGState {
  std::vector<double> mu;         // scaled multipliers, lambda = -2 mu
  std::vector<double> gradient;   // [w] mu - b at the current point
  std::vector<double> direction;  // current search direction
  double grad_norm_sq_prev = 0.0;
  std::size_t iteration = 0;      // completed updates
};

using CGObserver = std::function<void(const CGState&)>;

inline SolveReport solve_cg(const LinearSystem& system, const SolverConfig& config,
                            const CGObserver& observer = {}) {
  validate(config);
  const DenseMatrix& a = system.matrix();
  const auto& b = system.rhs();
  const std::size_t m = a.rows();

  GramOperator gram(a, config.gram_explicit_threshold);
  detail::IterateTracker tracker(system);
  detail::EnergyMonitor energy;

  CGState st;
  st.mu.assign(m, 0.0);
  tracker.observe(st.mu, 0);

  double diag_max = 0.0;
  for (double d : gram.diagonal()) diag_max = std::max(diag_max, d);

  Termination termination = Termination::MaxPasses;
  StopRule stopped_by = StopRule::None;

  const auto energy_at = [&](std::span<const double> mu) {
    return quadratic_energy(gram, mu, b);
  };

  while (true) {
    auto wmu = gram.apply(st.mu);
    st.gradient.resize(m);
    for (std::size_t i = 0; i < m; ++i) st.gradient[i] = wmu[i] - b[i];
    const double grad_norm_sq = dot(st.gradient, st.gradient);
    const double e_center = 0.5 * dot(st.mu, wmu) - dot(st.mu, b);
    if (observer) observer(st);

    if (std::sqrt(grad_norm_sq) < config.tolerance) {
      termination = Termination::Converged;
      stopped_by = StopRule::GradientNorm;
      break;
    }

    if (st.iteration % m == 0 || st.grad_norm_sq_prev <= 0.0) {
      st.direction = direction_update(st.gradient, std::nullopt, 0.0);
    } else {
      const double beta = grad_norm_sq / st.grad_norm_sq_prev;
      st.direction =
          direction_update(st.gradient, std::span<const double>(st.direction), beta);
    }
    st.grad_norm_sq_prev = grad_norm_sq;

    // Probe distance in mu units; the lambda-unit spacing delta_scale *
    // (1 + |lambda|) / (1 + |d|) halves under lambda = -2 mu.
    const double delta = 0.5 * config.delta_scale * (1.0 + 2.0 * norm2(st.mu)) /
                         (1.0 + norm2(st.direction));

    std::optional<double> step;
    if (config.line_search == LineSearchMode::Parabolic) {
      const auto probe = [&](double t) {
        std::vector<double> p(m);
        for (std::size_t i = 0; i < m; ++i) p[i] = st.mu[i] + t * st.direction[i];
        return energy_at(p);
      };
      step = parabolic_step(probe(-delta), e_center, probe(delta), delta);
    } else {
      const auto wd = gram.apply(st.direction);
      const double curvature = dot(st.direction, wd);
      // flat means the direction is (numerically) a Gram null vector; the
      // test must be relative to the direction size, not absolute, or
      // ordinary convergence (shrinking directions) would trip it
      if (curvature <= 1e-14 * diag_max * dot(st.direction, st.direction))
        step = std::nullopt;
      else
        step = grad_norm_sq / curvature;
    }

    if (!step) {
      termination = Termination::FlatDirection;
      break;
    }

    double change = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double delta_mu = *step * st.direction[i];
      st.mu[i] += delta_mu;
      change += std::abs(delta_mu);
    }
    change *= 2.0;  // lambda units
    st.iteration += 1;

    energy.step(energy_at(st.mu));
    tracker.observe(st.mu, st.iteration);

    if (change < config.tolerance) {
      termination = Termination::Converged;
      stopped_by = StopRule::ChangeSum;
      break;
    }
    if (st.iteration >= config.max_passes) {
      termination = Termination::MaxPasses;
      break;
    }
  }

  MultiplierState final_state{std::move(st.mu), st.iteration};
  if (termination == Termination::FlatDirection && tracker.has_best()) {
    // A flat direction ends the run mid-stall; report the best iterate seen.
    final_state.mu.assign(tracker.best_mu().begin(), tracker.best_mu().end());
  }
  return detail::finish_report(system, final_state, termination, stopped_by, tracker,
                               energy.max_increase);
}

}  // namespace minnorm
