#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace romanoff::cli {

enum class OutputFormat { csv, json };

/// Conventions and budgets shared by every subcommand. Embedded in each report.
struct RunConfig {
  bool zero_in_N = true;
  std::uint64_t memory_budget_bytes = std::uint64_t{2} << 30;
  std::uint64_t work_budget = 2'000'000'000;
  unsigned precision_bits = 96;
  OutputFormat output_format = OutputFormat::csv;
  std::uint64_t seed = 20220101;
};

/// Applies `key = value` lines (keys named as RunConfig fields, '#' comments)
/// on top of cfg. Throws std::invalid_argument on unknown keys or bad values.
void apply_config_text(const std::string& text, RunConfig& cfg);

/// Exit codes: all asserted inequalities hold / verification failure / usage or budget error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// A tabular report rendered as CSV or JSON.
struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

void write_table(std::ostream& out, const Table& table, const RunConfig& cfg);

/// Entry point shared by the executable and the tests. Data goes to out,
/// progress and diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace romanoff::cli
