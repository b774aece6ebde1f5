// Command-line front end: solve systems from text files, run the built-in
// reference suite, and emit deterministic random test systems.
//
// Exit codes: 0 Converged, 2 MaxPasses, 3 FlatDirection, 4 InconsistentRow,
// 64 usage or input errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "minnorm/minnorm.hpp"

namespace {

constexpr int kUsageError = 64;

int exit_code_for(minnorm::Termination termination) {
  switch (termination) {
    case minnorm::Termination::Converged: return 0;
    case minnorm::Termination::MaxPasses: return 2;
    case minnorm::Termination::FlatDirection: return 3;
    case minnorm::Termination::InconsistentRow: return 4;
  }
  return kUsageError;
}

int run_solve(const std::string& path, const minnorm::SolverConfig& config,
              minnorm::ReportFormat format, bool with_oracle) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    return kUsageError;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();

  minnorm::SolveReport report;
  minnorm::OracleComparison oracle;
  try {
    const auto system = minnorm::parse_system(buffer.str());
    report = minnorm::solve(system, config);
    if (with_oracle) {
      oracle.x = config.rank_tolerance ? minnorm::pinv_solve(system, *config.rank_tolerance)
                                       : minnorm::pinv_solve(system);
      std::vector<double> diff(report.x.size());
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = report.x[i] - oracle.x[i];
      oracle.deviation = minnorm::norm2(diff);
    }
  } catch (const minnorm::ParseError& e) {
    std::cerr << "error: " << path << ": " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }

  std::cout << minnorm::emit_report(report, format, with_oracle ? &oracle : nullptr);
  return exit_code_for(report.termination);
}

int run_suite() {
  const auto entries = minnorm::run_reference_suite();
  bool all_passed = true;
  std::printf("%-6s %-11s %-12s %9s %12s %10s  %s\n", "case", "method", "termination", "passes",
              "error", "tolerance", "result");
  for (const auto& e : entries) {
    all_passed = all_passed && e.passed;
    std::printf("%-6s %-11s %-12s %9zu %12.3e %10.0e  %s\n", e.case_id.c_str(),
                minnorm::name_of(e.method), minnorm::name_of(e.report.termination),
                e.report.passes, e.error_inf, e.tolerance, e.passed ? "pass" : "FAIL");
  }
  std::printf("%s\n", all_passed ? "all cases passed" : "some cases FAILED");
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-norm solver for dense real linear systems"};
  app.require_subcommand(1);

  std::string file;
  std::string method = "relax";
  std::string line_search = "parabolic";
  std::string format = "human";
  double tolerance = 1e-10;
  std::size_t max_passes = 300000;
  bool with_oracle = false;

  auto* solve_cmd = app.add_subcommand("solve", "Solve a system read from a text file");
  solve_cmd->add_option("file", file, "System file (header 'M N', M rows, then rhs)")->required();
  solve_cmd->add_option("--method", method, "Iterative method")
      ->check(CLI::IsMember({"relax", "cg"}));
  solve_cmd->add_option("--tol", tolerance, "Termination tolerance");
  solve_cmd->add_option("--max-passes", max_passes, "Pass/iteration cap");
  solve_cmd->add_option("--line-search", line_search, "Line search used by cg")
      ->check(CLI::IsMember({"parabolic", "exact"}));
  solve_cmd->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"human", "json"}));
  solve_cmd->add_flag("--oracle", with_oracle,
                      "Append the pseudoinverse solution and the deviation from it");

  auto* suite_cmd =
      app.add_subcommand("paper-suite", "Run both methods over the built-in reference systems");

  std::size_t gen_rows = 0;
  std::size_t gen_cols = 0;
  std::size_t gen_rank = 0;
  double gen_cond = 1.0;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("gen", "Emit a deterministic random test system");
  gen_cmd->add_option("--rows", gen_rows, "Equation count")->required();
  gen_cmd->add_option("--cols", gen_cols, "Unknown count")->required();
  gen_cmd->add_option("--rank", gen_rank, "Matrix rank (default min(rows, cols))");
  gen_cmd->add_option("--cond", gen_cond, "Singular value ratio");
  gen_cmd->add_option("--seed", gen_seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  if (solve_cmd->parsed()) {
    minnorm::SolverConfig config;
    config.method = method == "relax" ? minnorm::Method::Relaxation
                                      : minnorm::Method::ConjugateGradient;
    config.line_search = line_search == "parabolic" ? minnorm::LineSearchMode::Parabolic
                                                    : minnorm::LineSearchMode::Exact;
    config.tolerance = tolerance;
    config.max_passes = max_passes;
    try {
      minnorm::validate(config);
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsageError;
    }
    return run_solve(file, config,
                     format == "json" ? minnorm::ReportFormat::Json : minnorm::ReportFormat::Human,
                     with_oracle);
  }

  if (suite_cmd->parsed()) return run_suite();

  if (gen_cmd->parsed()) {
    minnorm::GeneratorParams params;
    params.rows = gen_rows;
    params.cols = gen_cols;
    params.rank = gen_rank == 0 ? std::min(gen_rows, gen_cols) : gen_rank;
    params.condition = gen_cond;
    params.seed = gen_seed;
    try {
      std::cout << minnorm::format_system(minnorm::generate_system(params));
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsageError;
    }
    return 0;
  }

  return kUsageError;
}
