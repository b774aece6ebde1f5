#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "minnorm/conjugate_gradient.hpp"
#include "minnorm/core.hpp"
#include "minnorm/relaxation.hpp"
#include "minnorm/solver.hpp"

// Built-in reference systems with known minimum-norm solutions, covering a
// well-posed square system, a square system with large mixed coefficients, a
// degenerate system with a duplicated equation, and an ill-conditioned
// overdetermined least-squares instance. Each case carries the expected
// solution and the per-method accuracy bound it must meet.

namespace minnorm {

struct ReferenceCase {
  std::string id;
  std::string summary;
  LinearSystem system;
  std::vector<double> reference_x;
  double tol_relaxation;  // infinity-norm bound on x - reference_x
  double tol_cg;
};

inline std::vector<ReferenceCase> reference_cases() {
  std::vector<ReferenceCase> cases;
  cases.push_back({"1a", "3x3 cyclic pair sums, unique solution",
                   LinearSystem(DenseMatrix::from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}),
                                {2.0, 2.0, 2.0}),
                   {1.0, 1.0, 1.0}, 1e-6, 1e-6});
  cases.push_back({"1b", "3x3 dense system with mixed-scale coefficients",
                   LinearSystem(DenseMatrix::from_rows(
                                    {{33, 16, 72}, {-24, -10, -57}, {18, -11, 7}}),
                                {129.0, -96.0, 8.5}),
                   {1.0, 1.5, 1.0}, 1e-5, 1e-3});
  cases.push_back({"2", "degenerate 3x3 system with a duplicated equation",
                   LinearSystem(DenseMatrix::from_rows({{1, 1, 1}, {1, 1, 1}, {1, -1, 0}}),
                                {1.0, 1.0, 0.0}),
                   {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 1e-4, 1e-4});
  cases.push_back({"3", "ill-conditioned overdetermined 4x3 system",
                   LinearSystem(DenseMatrix::from_rows(
                                    {{1, 2, 4}, {1, 4, 16}, {1, 6, 36}, {1, 8, 64}}),
                                {4.999, 9.001, 12.999, 17.001}),
                   {0.998997, 2.000200, -2.8825692e-8}, 1e-2, 1e-2});
  return cases;
}

struct SuiteEntry {
  std::string case_id;
  Method method = Method::Relaxation;
  SolveReport report;
  double error_inf = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Runs both methods over every reference case with default configuration
/// and checks the recovered x against the known solutions.
inline std::vector<SuiteEntry> run_reference_suite() {
  std::vector<SuiteEntry> entries;
  for (const auto& c : reference_cases()) {
    for (const Method method : {Method::Relaxation, Method::ConjugateGradient}) {
      SolverConfig config;
      config.method = method;
      SuiteEntry entry;
      entry.case_id = c.id;
      entry.method = method;
      entry.report = method == Method::Relaxation ? solve_relaxation(c.system, config)
                                                  : solve_cg(c.system, config);
      entry.error_inf = inf_norm_diff(entry.report.x, c.reference_x);
      entry.tolerance = method == Method::Relaxation ? c.tol_relaxation : c.tol_cg;
      entry.passed = entry.error_inf <= entry.tolerance;
      entries.push_back(std::move(entry));
    }
  }
  return entries;
}

}  // namespace minnorm
