#pragma once

#include "symelim/symbol_elimination.hpp"
#include "symelim/task.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace symelim {

struct RunOptions {
  /// Fixed timestamp and masked runtimes, for snapshot tests.
  bool golden = false;
  unsigned jobs = 1;
  bool dump_reduction = false;
  std::optional<std::filesystem::path> smtlib_dir;
};

enum class Outcome { Constraint, Sat, Unsat, Error };

struct TaskResult {
  std::string task;
  Outcome outcome = Outcome::Error;
  std::optional<ConstraintResult> constraint;
  std::optional<SatResult> sat;
  /// Witness restricted to the problem's own constants and extension terms.
  Valuation witness;
  std::string error;
  double runtime = 0;
  Statistics stats;
  std::string reduction;  // filled with --dump-reduction
};

/// Runs one task; never throws (errors end up in the result).
TaskResult run_task(const Task& task, const RunOptions& options);
/// Runs all tasks, possibly concurrently; results keep the input order.
std::vector<TaskResult> run_tasks(const std::vector<Task>& tasks, const RunOptions& options);

std::string format_report(const std::vector<TaskResult>& results, const RunOptions& options);

/// Exit codes of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitTaskError = 3;

/// Parses and runs a task file; the report goes to `out` in one write,
/// diagnostics to `err`. Returns the exit code.
int run_file(const std::filesystem::path& file, const RunOptions& options, std::ostream& out, std::ostream& err);
int run_text(const std::string& text, const std::filesystem::path& base_dir, const RunOptions& options,
             std::ostream& out, std::ostream& err);

}  // namespace symelim
