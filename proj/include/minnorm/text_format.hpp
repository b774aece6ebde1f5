#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "minnorm/core.hpp"
#include "minnorm/solver.hpp"

// System file format:
//
//   line 1: "M N"
//   next M lines: N whitespace-separated coefficients (one matrix row each)
//   then the right-hand side, either one line of M values or M lines of one
//   value each
//
// '#' starts a comment that runs to the end of the line; blank lines are
// ignored. The writer emits numbers with 17 significant digits, so a
// write/parse round trip reproduces every finite double bit-exactly.

namespace minnorm {

struct ParseError final : std::runtime_error {
  std::size_t line;

  ParseError(std::size_t line_number, const std::string& message)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + message),
        line(line_number) {}
};

namespace detail {

struct NumberLine {
  std::size_t number = 0;  // 1-based position in the raw input
  std::vector<double> values;
};

struct TokenizedText {
  std::vector<NumberLine> lines;
  std::size_t end_line = 1;  // one past the last raw line, for EOF reports
};

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

inline TokenizedText tokenize_number_lines(std::string_view text) {
  TokenizedText out;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_number;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);

    NumberLine parsed{line_number, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && is_space(line[i])) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && !is_space(line[j])) ++j;
      const std::string_view token = line.substr(i, j - i);
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec == std::errc::result_out_of_range)
        throw ParseError(line_number, "number out of range '" + std::string(token) + "'");
      if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError(line_number, "malformed number '" + std::string(token) + "'");
      if (!std::isfinite(value))
        throw ParseError(line_number, "non-finite value '" + std::string(token) + "'");
      parsed.values.push_back(value);
      i = j;
    }
    if (!parsed.values.empty()) out.lines.push_back(std::move(parsed));
  }
  out.end_line = line_number + 1;
  return out;
}

inline std::size_t parse_count(const NumberLine& line, double value, const char* what) {
  if (!(value > 0.0) || value != std::floor(value) || value > 1e9)
    throw ParseError(line.number, std::string(what) + " must be a positive integer");
  return static_cast<std::size_t>(value);
}

}  // namespace detail

inline LinearSystem parse_system(std::string_view text) {
  const auto tokens = detail::tokenize_number_lines(text);
  const auto& lines = tokens.lines;
  if (lines.empty())
    throw ParseError(tokens.end_line, "unexpected end of input: missing size header");

  const auto& header = lines.front();
  if (header.values.size() != 2)
    throw ParseError(header.number, "size header must hold exactly two values (rows cols)");
  const std::size_t rows = detail::parse_count(header, header.values[0], "row count");
  const std::size_t cols = detail::parse_count(header, header.values[1], "column count");

  std::vector<double> entries;
  entries.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t index = 1 + r;
    if (index >= lines.size())
      throw ParseError(tokens.end_line, "unexpected end of input: expected matrix row " +
                                            std::to_string(r + 1) + " of " +
                                            std::to_string(rows));
    const auto& line = lines[index];
    if (line.values.size() != cols)
      throw ParseError(line.number, "expected " + std::to_string(cols) + " coefficients, found " +
                                        std::to_string(line.values.size()));
    entries.insert(entries.end(), line.values.begin(), line.values.end());
  }

  std::vector<double> rhs;
  const std::size_t first_rhs = 1 + rows;
  const std::size_t remaining = lines.size() - std::min(lines.size(), first_rhs);
  if (remaining == 0)
    throw ParseError(tokens.end_line, "unexpected end of input: missing right-hand side");

  if (remaining == 1 && lines[first_rhs].values.size() == rows) {
    rhs = lines[first_rhs].values;
  } else {
    if (remaining < rows)
      throw ParseError(tokens.end_line, "unexpected end of input: expected " +
                                            std::to_string(rows) + " right-hand-side lines");
    if (remaining > rows)
      throw ParseError(lines[first_rhs + rows].number, "unexpected trailing content");
    rhs.reserve(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      const auto& line = lines[first_rhs + r];
      if (line.values.size() != 1)
        throw ParseError(line.number, "expected one right-hand-side value, found " +
                                          std::to_string(line.values.size()));
      rhs.push_back(line.values[0]);
    }
  }

  return LinearSystem(DenseMatrix(rows, cols, std::move(entries)), std::move(rhs));
}

/// Shortest form with 17 significant digits; parses back to the same bits.
inline std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

inline std::string format_system(const LinearSystem& system) {
  const DenseMatrix& a = system.matrix();
  std::string out = std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto row = a.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ' ';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  for (std::size_t m = 0; m < system.rhs().size(); ++m) {
    if (m > 0) out += ' ';
    out += format_double(system.rhs()[m]);
  }
  out += '\n';
  return out;
}

enum class ReportFormat { Human, Json };

struct OracleComparison {
  std::vector<double> x;
  double deviation = 0.0;  // ||x_iterative - x_oracle||_2
};

namespace detail {

inline std::string json_array(std::span<const double> values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_double(values[i]);
  }
  out += "]";
  return out;
}

inline std::string human_vector(std::span<const double> values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += ' ';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", values[i]);
    out += buf;
  }
  out += " ]";
  return out;
}

}  // namespace detail

inline std::string emit_report(const SolveReport& report, ReportFormat format,
                               const OracleComparison* oracle = nullptr) {
  if (format == ReportFormat::Json) {
    std::string out = "{\n";
    out += "  \"x\": " + detail::json_array(report.x) + ",\n";
    out += "  \"lambda\": " + detail::json_array(report.lambda) + ",\n";
    out += "  \"residual_norm\": " + format_double(report.residual_norm) + ",\n";
    out += "  \"solution_norm\": " + format_double(report.solution_norm) + ",\n";
    out += "  \"passes\": " + std::to_string(report.passes) + ",\n";
    out += "  \"termination\": \"" + std::string(name_of(report.termination)) + "\",\n";
    out += "  \"gradient_norm\": " + format_double(report.gradient_norm);
    if (report.best_residual) {
      out += ",\n  \"best_residual_x\": {\"x\": " + detail::json_array(report.best_residual->x) +
             ", \"pass\": " + std::to_string(report.best_residual->pass) +
             ", \"residual_norm\": " + format_double(report.best_residual->residual_norm) + "}";
    }
    if (oracle) {
      out += ",\n  \"oracle_x\": " + detail::json_array(oracle->x);
      out += ",\n  \"oracle_deviation\": " + format_double(oracle->deviation);
    }
    out += "\n}\n";
    return out;
  }

  std::ostringstream out;
  out << "termination    " << name_of(report.termination);
  if (report.termination == Termination::Converged) out << " (" << name_of(report.stopped_by) << ")";
  out << "\n";
  out << "passes         " << report.passes << "\n";
  out << "x              " << detail::human_vector(report.x) << "\n";
  out << "residual norm  " << format_double(report.residual_norm) << "\n";
  out << "solution norm  " << format_double(report.solution_norm) << "\n";
  out << "gradient norm  " << format_double(report.gradient_norm) << "\n";
  out << "multipliers    " << detail::human_vector(report.lambda) << "\n";
  if (report.best_residual) {
    out << "best residual  " << format_double(report.best_residual->residual_norm) << " (pass "
        << report.best_residual->pass << ")\n";
    out << "best x         " << detail::human_vector(report.best_residual->x) << "\n";
  }
  if (oracle) {
    out << "oracle x       " << detail::human_vector(oracle->x) << "\n";
    out << "oracle dev     " << format_double(oracle->deviation) << "\n";
  }
  return out.str();
}

}  // namespace minnorm
