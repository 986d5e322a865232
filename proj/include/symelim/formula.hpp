#pragma once

#include "symelim/polynomial.hpp"

#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace symelim {

enum class Rel : unsigned char { Eq, Ne, Le, Lt, Ge, Gt };

/// Logical complement: not (p rel 0) == p negate(rel) 0.
Rel negate(Rel r);
/// Relation obtained when both sides are multiplied by -1.
Rel mirror(Rel r);
/// Whether `sign(value) rel 0` holds for a value of the given sign (-1, 0, 1).
bool holds(Rel r, int sign);
const char* rel_symbol(Rel r);

/// Canonical arithmetic atom `poly rel 0`.
struct Atom {
  Polynomial poly;
  Rel rel;
  friend bool operator==(const Atom& a, const Atom& b) { return a.rel == b.rel && a.poly == b.poly; }
};
int compare(const Atom& a, const Atom& b);

enum class FormulaKind : unsigned char { False, True, Atom, And, Or, Forall, Exists };

/// Immutable formula in negation normal form.
///
/// Negation and implication are not stored as nodes: `negate` pushes the
/// negation down to the atoms, which are closed under complement. Smart
/// constructors flatten nested And/Or, drop neutral elements, short-circuit
/// absorbing ones, sort children canonically and remove duplicates.
class Formula {
 public:
  Formula();  // true
  static Formula truth();
  static Formula falsity();
  static Formula boolean(bool value);
  /// Normalizes `lhs rel rhs` into canonical form (possibly true/false).
  static Formula atom(const Polynomial& lhs, Rel rel, const Polynomial& rhs = Polynomial());
  static Formula atom(const Term& lhs, Rel rel, const Term& rhs);
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);
  static Formula forall(std::vector<Term> vars, const Formula& body);
  static Formula exists(std::vector<Term> vars, const Formula& body);

  FormulaKind kind() const;
  bool is_true() const { return kind() == FormulaKind::True; }
  bool is_false() const { return kind() == FormulaKind::False; }
  bool is_atom() const { return kind() == FormulaKind::Atom; }
  bool is_quantifier() const { return kind() == FormulaKind::Forall || kind() == FormulaKind::Exists; }
  /// Atom kind only.
  const Atom& atom_value() const;
  /// And/Or children, or the single body of a quantifier.
  std::span<const Formula> children() const;
  /// Quantifier kinds only.
  std::span<const Term> bound() const;
  const Formula& body() const;
  std::size_t hash() const;

  friend int compare(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

  struct Node;

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula quantifier(FormulaKind kind, std::vector<Term> vars, const Formula& body);
  static Formula junction(FormulaKind kind, std::vector<Formula> parts);
  std::shared_ptr<const Node> node_;
};

Formula atom_formula(const Atom& a);
Formula negate(const Formula& f);
Formula implies(const Formula& a, const Formula& b);
Formula iff(const Formula& a, const Formula& b);

/// Capture-avoiding simultaneous substitution; atoms are re-normalized.
Formula substitute(const Formula& f, const Substitution& sigma);
/// Rebuilds `f` with every atom replaced by `fn(atom)`.
Formula map_atoms(const Formula& f, const std::function<Formula(const Atom&)>& fn);

std::set<Term> free_variables(const Formula& f);
/// Constant symbols occurring anywhere in `f`, including inside arguments.
std::set<Term> constants_of(const Formula& f);
/// Application subterms occurring anywhere in `f` (nested ones included).
std::set<Term> applications_of(const Formula& f);
/// Function symbols applied anywhere in `f`.
std::set<std::string> function_symbols_of(const Formula& f);
/// Every atomic term (constant, variable, application) used as a polynomial indeterminate.
std::set<Term> indeterminates_of(const Formula& f);
std::size_t count_atoms(const Formula& f);
std::vector<Atom> atoms_of(const Formula& f);
bool is_quantifier_free(const Formula& f);

/// Truth value of a quantifier-free formula; throws TermError on missing values.
bool evaluate(const Formula& f, const Valuation& v);
bool evaluate(const Atom& a, const Valuation& v);

/// Universally quantified clause `forall vars. guard_1 and ... -> head_1 or ...`.
struct Clause {
  std::vector<Term> vars;
  std::vector<Formula> guard;
  std::vector<Formula> head;
  bool flat = true;
  bool linear = true;

  /// The quantifier-free matrix `not guard or head`.
  Formula matrix() const;
  Formula to_formula() const;
};

}  // namespace symelim
