#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "minnorm/core.hpp"
#include "minnorm/lagrange.hpp"

namespace minnorm {

enum class Method { Relaxation, ConjugateGradient };
enum class LineSearchMode { Parabolic, Exact };
enum class Termination { Converged, MaxPasses, FlatDirection, InconsistentRow };
enum class StopRule { None, GradientNorm, ChangeSum };

struct SolverConfig {
  Method method = Method::Relaxation;
  double tolerance = 1e-10;
  std::size_t max_passes = 300000;
  LineSearchMode line_search = LineSearchMode::Parabolic;
  double delta_scale = 1e-3;
  std::size_t gram_explicit_threshold = 512;
  // Pseudoinverse truncation threshold, relative to the largest Gram
  // eigenvalue; 1e-12 * M when unset.
  std::optional<double> rank_tolerance{};
};

inline void validate(const SolverConfig& config) {
  detail::require(config.tolerance > 0.0 && std::isfinite(config.tolerance),
                  "SolverConfig: tolerance must be positive and finite");
  detail::require(config.max_passes >= 1, "SolverConfig: max_passes must be at least 1");
  detail::require(config.delta_scale > 0.0 && std::isfinite(config.delta_scale),
                  "SolverConfig: delta_scale must be positive and finite");
  if (config.rank_tolerance)
    detail::require(*config.rank_tolerance > 0.0,
                    "SolverConfig: rank_tolerance must be positive");
}

struct BestResidualIterate {
  std::vector<double> x;
  std::size_t pass = 0;
  double residual_norm = 0.0;
};

struct SolveReport {
  std::vector<double> x;
  std::vector<double> lambda;
  double residual_norm = 0.0;
  double solution_norm = 0.0;
  double gradient_norm = 0.0;
  std::size_t passes = 0;
  Termination termination = Termination::MaxPasses;
  StopRule stopped_by = StopRule::None;
  // Iterate with the smallest residual norm seen along the run. On
  // inconsistent systems the iteration semiconverges, so the best iterate
  // can be better than the final one.
  std::optional<BestResidualIterate> best_residual{};
  // Largest per-step increase of the internal quadratic energy, normalized
  // by 1 + |E|; stays 0 when the run is monotone.
  double energy_increase_max = 0.0;
};

inline const char* name_of(Method m) {
  return m == Method::Relaxation ? "relaxation" : "cg";
}

inline const char* name_of(Termination t) {
  switch (t) {
    case Termination::Converged: return "Converged";
    case Termination::MaxPasses: return "MaxPasses";
    case Termination::FlatDirection: return "FlatDirection";
    case Termination::InconsistentRow: return "InconsistentRow";
  }
  return "unknown";
}

inline const char* name_of(StopRule r) {
  switch (r) {
    case StopRule::None: return "none";
    case StopRule::GradientNorm: return "gradient norm";
    case StopRule::ChangeSum: return "change sum";
  }
  return "unknown";
}

namespace detail {

/// Tracks the iterate with the smallest residual norm seen so far.
class IterateTracker {
 public:
  explicit IterateTracker(const LinearSystem& system) : system_(&system) {}

  void observe(std::span<const double> mu, std::size_t pass) {
    auto x = matvec_transpose(system_->matrix(), mu);
    const double rn = norm2(residual(*system_, x));
    if (!has_best_ || rn < best_residual_norm_) {
      has_best_ = true;
      best_residual_norm_ = rn;
      best_pass_ = pass;
      best_mu_.assign(mu.begin(), mu.end());
    }
  }

  bool has_best() const { return has_best_; }
  double best_residual_norm() const { return best_residual_norm_; }
  std::size_t best_pass() const { return best_pass_; }
  std::span<const double> best_mu() const { return best_mu_; }

 private:
  const LinearSystem* system_;
  bool has_best_ = false;
  double best_residual_norm_ = 0.0;
  std::size_t best_pass_ = 0;
  std::vector<double> best_mu_;
};

/// Watches the energy sequence; solves start from mu = 0 where E = 0.
struct EnergyMonitor {
  double previous = 0.0;
  double max_increase = 0.0;

  void step(double next) {
    const double increase = (next - previous) / (1.0 + std::abs(previous));
    if (increase > max_increase) max_increase = increase;
    previous = next;
  }
};

inline SolveReport finish_report(const LinearSystem& system, const MultiplierState& state,
                                 Termination termination, StopRule stopped_by,
                                 const IterateTracker& tracker, double energy_increase_max) {
  SolveReport report;
  report.lambda = state.lambda();
  report.x = recover_x(system.matrix(), report.lambda);
  report.residual_norm = norm2(residual(system, report.x));
  report.solution_norm = norm2(report.x);
  report.gradient_norm = norm2(phi_gradient(system.matrix(), system.rhs(), report.lambda));
  report.passes = state.passes;
  report.termination = termination;
  report.stopped_by = stopped_by;
  if (tracker.has_best()) {
    BestResidualIterate best;
    best.x = matvec_transpose(system.matrix(), tracker.best_mu());
    best.pass = tracker.best_pass();
    best.residual_norm = tracker.best_residual_norm();
    report.best_residual = std::move(best);
  }
  report.energy_increase_max = energy_increase_max;
  return report;
}

}  // namespace detail

}  // namespace minnorm
