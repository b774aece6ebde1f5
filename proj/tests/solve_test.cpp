#include "minnorm/solve.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "minnorm/builtin_suite.hpp"
#include "minnorm/pinv.hpp"
#include "testutil.hpp"

using namespace minnorm;

TEST(Solve, DispatchesOnMethod) {
  const auto system = testutil::case_1a();
  SolverConfig config;
  config.method = Method::Relaxation;
  const auto relax = solve(system, config);
  config.method = Method::ConjugateGradient;
  const auto cg = solve(system, config);
  EXPECT_EQ(relax.termination, Termination::Converged);
  EXPECT_EQ(cg.termination, Termination::Converged);
  EXPECT_LE(inf_norm_diff(relax.x, cg.x), 1e-6);
}

TEST(Solve, ReportIsSelfConsistent) {
  const std::vector<LinearSystem> systems{testutil::case_1a(), testutil::case_1b(),
                                          testutil::case_2(), testutil::case_3()};
  for (const auto& system : systems) {
    for (const Method method : {Method::Relaxation, Method::ConjugateGradient}) {
      SolverConfig config;
      config.method = method;
      const auto report = solve(system, config);

      // x is exactly the recovery map applied to the reported multipliers
      const auto recovered = recover_x(system.matrix(), report.lambda);
      ASSERT_EQ(recovered.size(), report.x.size());
      for (std::size_t i = 0; i < recovered.size(); ++i) EXPECT_EQ(report.x[i], recovered[i]);

      // norms are recomputed from the reported x
      EXPECT_EQ(report.residual_norm, norm2(residual(system, report.x)));
      EXPECT_EQ(report.solution_norm, norm2(report.x));
      EXPECT_GE(report.gradient_norm, 0.0);
    }
  }
}

TEST(Solve, ConfigValidation) {
  SolverConfig config;
  config.tolerance = 0.0;
  EXPECT_THROW(solve(testutil::case_1a(), config), std::invalid_argument);
  config.tolerance = 1e-10;
  config.max_passes = 0;
  EXPECT_THROW(solve(testutil::case_1a(), config), std::invalid_argument);
  config.max_passes = 10;
  config.delta_scale = -1.0;
  EXPECT_THROW(solve(testutil::case_1a(), config), std::invalid_argument);
}

// At a stationary point of the multiplier functional the defect of the
// original system equals the gradient, so a gradient below eps puts the
// residual below a small multiple of eps times the matrix norm.
TEST(Solve, StationaryPointBoundsResidual) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GeneratorParams params;
    params.rows = 5;
    params.cols = 8;
    params.rank = 5;  // full row rank: consistent for any rhs
    params.condition = 8.0;
    params.seed = 2000 + seed;
    const auto system = generate_system(params);

    SolverConfig config;
    config.method = Method::ConjugateGradient;
    config.line_search = LineSearchMode::Exact;
    const double eps = config.tolerance;
    const auto report = solve(system, config);
    ASSERT_EQ(report.termination, Termination::Converged);

    double frob = 0.0;
    for (double e : system.matrix().entries()) frob += e * e;
    frob = std::sqrt(frob);
    EXPECT_LE(report.residual_norm, 10.0 * eps * frob);
  }
}

TEST(Solve, IterativeMethodsAgreeWithPseudoinverse) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SeededRng shape_rng(seed * 13);
    GeneratorParams params;
    params.rows = 2 + shape_rng.integer(0, 6);
    params.cols = 2 + shape_rng.integer(0, 6);
    params.rank = 1 + shape_rng.integer(0, std::min(params.rows, params.cols) - 1);
    params.condition = 1.0 + 20.0 * shape_rng.unit();
    params.seed = 3000 + seed;
    const auto system = generate_system(params);
    const auto oracle = pinv_solve(system);

    SolverConfig config;
    config.method = Method::Relaxation;
    const auto relax = solve(system, config);
    config.method = Method::ConjugateGradient;
    config.line_search = LineSearchMode::Exact;
    const auto cg = solve(system, config);

    const double bound = 1e-6 * (1.0 + norm2(oracle));
    EXPECT_LE(inf_norm_diff(relax.x, oracle), bound) << "seed " << seed;
    EXPECT_LE(inf_norm_diff(cg.x, oracle), bound) << "seed " << seed;
  }
}

TEST(ReferenceSuite, AllCasesPass) {
  const auto entries = run_reference_suite();
  EXPECT_EQ(entries.size(), 8u);
  for (const auto& e : entries) {
    EXPECT_TRUE(e.passed) << "case " << e.case_id << " method " << name_of(e.method)
                          << " error " << e.error_inf;
  }
}
