#pragma once

#include "symelim/problem.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace symelim {

enum class TaskMode { CheckSat, GenerateConstraints };

const char* mode_name(TaskMode m);

struct Task {
  std::string name;
  TaskMode mode = TaskMode::GenerateConstraints;
  /// Accepted for compatibility and otherwise ignored; elimination is internal.
  std::string solver;
  std::vector<std::string> parameters;
  std::vector<Formula> assumptions;
  std::vector<std::string> assumption_text;
  /// Requests the stronger simplification pass on the final constraint.
  bool slfq_query = false;
  /// Conjoin the assumptions to the formula before eliminating (default on).
  bool assumptions_in_elimination = true;
  std::string specification_type;
  std::string specification_theory;
  ProblemSpec problem;
};

/// Parses a task file (a small YAML subset, see README). `base_dir` resolves
/// relative `specification.file` paths that are not inline literal blocks.
/// Throws ParseError.
std::vector<Task> parse_tasks(std::string_view text, const std::filesystem::path& base_dir = {});

/// Parses one assumption: a formula over the problem signature in which every
/// '?' stands for one universally quantified argument.
Formula parse_assumption(std::string_view text, const Signature& signature);

}  // namespace symelim
