#pragma once

#include "symelim/term.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace symelim {

/// Power product of atomic terms, kept sorted by the term order.
class Monomial {
 public:
  using Factor = std::pair<Term, unsigned>;

  Monomial() = default;
  explicit Monomial(const Term& atom);

  const std::vector<Factor>& factors() const { return factors_; }
  unsigned degree() const;
  unsigned degree_in(const Term& atom) const;
  bool is_one() const { return factors_.empty(); }
  bool contains(const Term& atom) const { return degree_in(atom) > 0; }
  /// This monomial with every power of `atom` removed.
  Monomial without(const Term& atom) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

 private:
  std::vector<Factor> factors_;
};

/// Graded order: higher total degree first, then lexicographic on factors.
/// Iterating a polynomial therefore yields its leading monomial first.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};
int compare(const Monomial& a, const Monomial& b);

/// Raised by `as_linear_in` when the requested symbol occurs with degree >= 2.
class DegreeError : public std::runtime_error {
 public:
  DegreeError(const Term& symbol, unsigned degree);
  const Term& symbol() const { return symbol_; }
  unsigned degree() const { return degree_; }

 private:
  Term symbol_;
  unsigned degree_;
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// No zero coefficient is ever stored.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  Polynomial() = default;
  static Polynomial constant(const Rational& c);
  static Polynomial atom(const Term& t);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant coefficient (the coefficient of the empty monomial).
  Rational constant_term() const;
  unsigned degree() const;
  unsigned degree_in(const Term& atom) const;
  bool contains(const Term& atom) const { return degree_in(atom) > 0; }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of the leading (first) monomial; zero polynomial -> 0.
  Rational leading_coefficient() const;
  /// Returns (g, q) with *this = g * q, g > 0 and q having coprime integer
  /// coefficients whose leading coefficient keeps the sign of the original.
  std::pair<Rational, Polynomial> primitive() const;
  /// The single atom `x` if the polynomial is exactly `1 * x`.
  std::optional<Term> as_atom() const;

  /// p = a * x + b with a, b free of x; throws DegreeError if deg_x(p) >= 2.
  std::pair<Polynomial, Polynomial> as_linear_in(const Term& x) const;

  std::set<Term> atoms() const;
  Polynomial substitute(const Term& x, const Polynomial& value) const;
  /// Replaces atoms through `sigma` and recurses into application arguments.
  Polynomial substitute(const Substitution& sigma) const;
  /// Exact value; throws TermError if some atom has no value.
  Rational evaluate(const Valuation& v) const;
  /// Partial evaluation: substitutes the known values, keeps the rest.
  Polynomial partial_evaluate(const Valuation& v) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  void add_term(const Monomial& m, const Rational& c);

 private:
  TermMap terms_;
};

int compare(const Polynomial& a, const Polynomial& b);

Polynomial pow(const Polynomial& p, unsigned e);

}  // namespace symelim
