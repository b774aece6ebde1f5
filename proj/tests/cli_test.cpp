// Process-level checks of the command-line tool: exit codes, report formats
// and generator determinism. The binary path and the sample-system directory
// come from the build system.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

CommandResult run_cli(const std::string& args) {
  const std::string command = std::string(MINNORM_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  CommandResult result;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string data_file(const std::string& name) {
  return std::string(MINNORM_DATA_DIR) + "/" + name;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

}  // namespace

TEST(Cli, SolveConvergedJson) {
  const auto result = run_cli("solve " + data_file("example1a.txt") + " --format json");
  EXPECT_EQ(result.exit_code, 0);
  const auto parsed = nlohmann::json::parse(result.output);
  EXPECT_EQ(parsed["termination"].get<std::string>(), "Converged");
  const auto x = parsed["x"].get<std::vector<double>>();
  ASSERT_EQ(x.size(), 3u);
  for (double xi : x) EXPECT_NEAR(xi, 1.0, 1e-6);
}

TEST(Cli, SolveHumanFormat) {
  const auto result = run_cli("solve " + data_file("example1a.txt"));
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_NE(result.output.find("Converged"), std::string::npos);
}

TEST(Cli, SolveCgWithOracle) {
  const auto result =
      run_cli("solve " + data_file("example1b.txt") + " --method cg --format json --oracle");
  const auto parsed = nlohmann::json::parse(result.output);
  ASSERT_TRUE(parsed.contains("oracle_x"));
  const auto oracle_x = parsed["oracle_x"].get<std::vector<double>>();
  EXPECT_NEAR(oracle_x[0], 1.0, 1e-6);
  EXPECT_NEAR(oracle_x[1], 1.5, 1e-6);
  EXPECT_LE(parsed["oracle_deviation"].get<double>(), 1e-2);
}

TEST(Cli, ExitCodeMaxPasses) {
  const auto result =
      run_cli("solve " + data_file("example1b.txt") + " --max-passes 3 --format json");
  EXPECT_EQ(result.exit_code, 2);
  EXPECT_NE(result.output.find("MaxPasses"), std::string::npos);
}

TEST(Cli, ExitCodeInconsistentRow) {
  const auto path = write_temp("minnorm_zero_row.txt", "2 2\n1 0\n0 0\n2 1\n");
  const auto result = run_cli("solve " + path);
  EXPECT_EQ(result.exit_code, 4);
  EXPECT_NE(result.output.find("InconsistentRow"), std::string::npos);
}

TEST(Cli, ExitCodeParseError) {
  const auto path = write_temp("minnorm_bad.txt", "2 2\n1 0\n0 1\n1 abc\n");
  const auto result = run_cli("solve " + path);
  EXPECT_EQ(result.exit_code, 64);
  EXPECT_NE(result.output.find("line 4"), std::string::npos);
}

TEST(Cli, ExitCodeMissingFile) {
  const auto result = run_cli("solve /nonexistent/system.txt");
  EXPECT_EQ(result.exit_code, 64);
}

TEST(Cli, ExitCodeUsageError) {
  EXPECT_EQ(run_cli("solve").exit_code, 64);
  EXPECT_EQ(run_cli("frobnicate").exit_code, 64);
}

TEST(Cli, GenIsDeterministic) {
  const std::string args = "gen --rows 5 --cols 4 --rank 3 --cond 100 --seed 9001";
  const auto first = run_cli(args);
  const auto second = run_cli(args);
  EXPECT_EQ(first.exit_code, 0);
  EXPECT_EQ(first.output, second.output);
  EXPECT_NE(first.output, run_cli("gen --rows 5 --cols 4 --rank 3 --cond 100 --seed 9002").output);

  // emitted text parses back through the solve path
  const auto path = write_temp("minnorm_gen.txt", first.output);
  EXPECT_EQ(run_cli("solve " + path + " --method cg --line-search exact").exit_code, 0);
}

TEST(Cli, ReferenceSuitePasses) {
  const auto result = run_cli("paper-suite");
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_NE(result.output.find("all cases passed"), std::string::npos);
  EXPECT_NE(result.output.find("1a"), std::string::npos);
  EXPECT_NE(result.output.find("1b"), std::string::npos);
}
