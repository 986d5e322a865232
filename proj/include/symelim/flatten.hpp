#pragma once

#include "symelim/problem.hpp"

#include <string>
#include <vector>

namespace symelim {

/// A non-ground clause is flat when every argument of an extension function is a variable.
bool is_flat(const Clause& c, const Signature& sig);
/// Linear: a variable occurring as an argument of two application terms only does so if the terms are equal.
bool is_linear(const Clause& c, const Signature& sig);

/// Replaces each non-variable argument t of an extension function by a fresh
/// variable v and adds the guard v = t.
Clause flatten_clause(const Clause& c, const Signature& sig);

struct FlatnessReport {
  std::vector<std::string> messages;
  std::size_t rewritten = 0;
  std::size_t nonlinear = 0;
};

/// Flattens the clauses of `spec` in place, records flat/linear flags on each
/// clause and reports what was changed. Never fails.
FlatnessReport check_flat_linear(ProblemSpec& spec);

}  // namespace symelim
