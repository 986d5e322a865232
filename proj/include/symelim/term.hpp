#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace symelim {

using Rational = mpq_class;

/// Name of the single scalar sort every arithmetic term lives in.
inline constexpr const char* kScalarSort = "real";

class Polynomial;

enum class TermKind : unsigned char { Variable, Constant, Apply, Arith };

/// Raised when a term is used in a position its shape does not allow
/// (e.g. a non-arithmetic subterm where a polynomial is expected).
class TermError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable, structurally compared first-order term.
///
/// `Variable`, `Constant` and `Apply` terms are *atomic*: they are the
/// indeterminates polynomials are built from. `Arith` wraps a polynomial
/// whose shape is not a single atom (numbers, sums, products). The
/// factories keep that split canonical: `from_polynomial(x)` for a bare
/// atom `x` returns the atom itself.
class Term {
 public:
  static Term variable(std::string name, std::string sort = kScalarSort);
  static Term constant(std::string name);
  static Term apply(std::string function, std::vector<Term> args);
  static Term number(const Rational& value);
  static Term from_polynomial(const Polynomial& p);

  TermKind kind() const;
  const std::string& name() const;
  const std::string& sort() const;
  std::span<const Term> args() const;
  /// Arith terms only.
  const Polynomial& polynomial() const;
  /// The term viewed as a polynomial (atoms become `1 * atom`).
  Polynomial to_polynomial() const;

  bool is_atomic() const { return kind() != TermKind::Arith; }
  bool is_variable() const { return kind() == TermKind::Variable; }
  bool is_constant() const { return kind() == TermKind::Constant; }
  bool is_apply() const { return kind() == TermKind::Apply; }
  bool is_ground() const;
  bool is_number() const;
  std::size_t hash() const;

  /// Total structural order; 0 iff structurally equal.
  friend int compare(const Term& a, const Term& b);
  friend bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
  friend bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

  struct Node;

 private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

using Substitution = std::map<Term, Term>;
using Valuation = std::map<Term, Rational>;

/// Simultaneous replacement of atomic terms (variables, constants, or whole
/// applications) inside `t`, recursing into application arguments.
Term substitute(const Term& t, const Substitution& sigma);

/// Collects every free variable occurring in `t`.
void collect_variables(const Term& t, std::set<Term>& out);
/// Collects every application subterm of `t`, innermost first.
void collect_applications(const Term& t, std::vector<Term>& out);
/// Collects every constant symbol occurring in `t`, including inside arguments.
void collect_constants(const Term& t, std::set<Term>& out);

/// Application depth: 0 for non-applications, 1 + max argument depth otherwise.
int application_depth(const Term& t);

}  // namespace symelim
