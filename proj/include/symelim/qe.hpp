#pragma once

#include "symelim/formula.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace symelim {

/// Raised when a symbol to be eliminated occurs non-linearly (or below a
/// function symbol) at its elimination step.
class QeError : public std::runtime_error {
 public:
  QeError(const Term& symbol, const std::string& why);
  const Term& symbol() const { return symbol_; }

 private:
  Term symbol_;
};

/// Existentially eliminates `x` (a variable, constant or opaque application)
/// from the quantifier-free `phi` by virtual substitution. The result is
/// equivalent to (exists x. phi) over ordered fields and does not contain x.
Formula vs_eliminate(const Term& x, const Formula& phi);

struct EliminationTrace {
  /// (symbol, formula before eliminating it), in elimination order.
  std::vector<std::pair<Term, Formula>> steps;
};

/// Eliminates every symbol of `vars` from `phi`, choosing the order
/// dynamically (constant coefficients first, then fewest parametric
/// coefficients, then fewest occurrences). Intermediate results are simplified.
Formula eliminate_block(const std::vector<Term>& vars, const Formula& phi, EliminationTrace* trace = nullptr);

/// Replaces every quantifier of `phi` by its quantifier-free equivalent.
Formula eliminate_quantifiers(const Formula& phi);

/// Satisfiability of a formula over the reals, all symbols existentially
/// read. Applications are treated as opaque values (no congruence).
bool is_satisfiable(const Formula& phi);
/// A rational model of `phi` (opaque applications included) if one exists.
std::optional<Valuation> find_model(const Formula& phi);

/// Validity of the universal closure of `phi`. Applications are handled by
/// Ackermann's reduction, so function symbols are uninterpreted.
bool is_valid(const Formula& phi);

/// Exact satisfiability of a conjunction by Fourier-Motzkin after substituting
/// `valuation`; throws QeError if a non-linear product remains.
bool numeric_fm_sat(const std::vector<Atom>& conjunction, const Valuation& valuation = {});
/// A satisfying assignment of a linear conjunction found by back-solving the
/// Fourier-Motzkin elimination, or nullopt when unsatisfiable.
std::optional<Valuation> fm_model(const std::vector<Atom>& conjunction);

struct SimplifyOptions {
  /// Atom-level entailment pruning against the assumptions (via is_valid).
  bool entailment_pruning = true;
  /// Also try replacing each atom occurrence by true/false and keep the
  /// change when equivalence under the assumptions is preserved.
  bool strong = false;
  /// Bound on nested simplification inside validity checks.
  int depth_cap = 1;
};

/// Context simplification without assumptions: merges atoms over the same
/// linear form, propagates And-context into children and Or-context into
/// siblings, removes duplicates and absorbed subformulas. Equivalence preserving.
Formula simplify_context(const Formula& phi);

/// Simplifies `phi` under `assumptions`; the result is equivalent to `phi`
/// whenever the assumptions hold. Universal assumptions such as
/// forall x. 0 <= out(x) are instantiated on the matching terms of `phi`.
Formula simplify(const Formula& phi, const std::vector<Formula>& assumptions, const SimplifyOptions& options = {});

/// Ground instances of universally quantified `assumptions` on the
/// application terms of `target` (plus the quantifier-free assumptions).
std::vector<Formula> instantiate_assumptions(const std::vector<Formula>& assumptions, const Formula& target);

}  // namespace symelim
