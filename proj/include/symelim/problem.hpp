#pragma once

#include "symelim/formula.hpp"
#include "symelim/lexer.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace symelim {

struct FunctionDecl {
  std::string name;
  unsigned arity = 1;
  int level = 0;
  std::string sort = kScalarSort;
};

/// Symbols of a problem. Extension functions carry their level in the chain
/// of extensions; level 0 is the base theory (arithmetic only).
struct Signature {
  std::vector<FunctionDecl> base_functions;
  std::map<std::string, FunctionDecl> functions;
  std::vector<std::pair<std::string, unsigned>> relations;
  std::map<std::string, std::string> constants;
  /// Constants used without a declaration; they are added to `constants` too.
  std::set<std::string> implicit_constants;

  const FunctionDecl* function(const std::string& name) const;
  int level_of(const std::string& function) const;
  int max_level() const;
  std::set<std::string> symbols_at(int level) const;
  std::set<std::string> extension_symbols() const;
  bool declares(const std::string& name) const { return functions.count(name) || constants.count(name); }
};

struct ProblemSpec {
  Signature signature;
  std::vector<Clause> clauses;
  std::vector<Formula> query;
  std::set<int> stably_local_levels;

  /// Highest level among the extension symbols of `f` (0 if none).
  int level_of(const Formula& f) const;
  int clause_level(const Clause& c) const;
};

struct FormulaParseOptions {
  /// When set, function applications are checked against it and undeclared
  /// constants are rejected instead of being created implicitly.
  const Signature* signature = nullptr;
  bool strict_constants = false;
  /// Variables that may occur free (bound by an enclosing context).
  std::vector<std::string> variables;
  /// Accept '?' as an argument; every occurrence denotes the same variable.
  std::optional<std::string> wildcard;
};

/// Parses a problem in the sectioned format (Base_functions, Extension_functions,
/// Relations, Constants, Clauses, Query, optional Stably_local). Throws ParseError.
ProblemSpec parse_problem(std::string_view text, std::size_t first_line = 1);

/// Parses a single formula: comparisons, AND(...), OR(...), NOT(...),
/// (FORALL x). body, (EXISTS x). body, 'true', 'false'. Throws ParseError.
Formula parse_formula(std::string_view text, const FormulaParseOptions& options = {});

/// Prints a problem back in the sectioned format; parse(print(p)) reproduces p.
std::string print_problem(const ProblemSpec& spec);

}  // namespace symelim
