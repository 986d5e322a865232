#include "common.hpp"

#include "doctest.h"

using namespace symelim;
using namespace symelim::testing;

namespace {

Formula random_formula(std::mt19937& rng, const std::vector<Term>& syms, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  if (depth == 0 || pick(rng) < 4) {
    Polynomial p = Polynomial::constant(random_rational(rng, 3));
    for (const auto& s : syms) p += Polynomial::atom(s) * random_rational(rng, 2);
    static const Rel rels[] = {Rel::Eq, Rel::Ne, Rel::Le, Rel::Lt, Rel::Ge, Rel::Gt};
    return Formula::atom(p, rels[pick(rng) % 6]);
  }
  std::vector<Formula> kids;
  for (int k = 0; k < 2 + pick(rng) % 2; ++k) kids.push_back(random_formula(rng, syms, depth - 1));
  if (pick(rng) == 0) return negate(Formula::conj(kids));
  return pick(rng) % 2 ? Formula::conj(kids) : Formula::disj(kids);
}

Valuation random_valuation(std::mt19937& rng, const std::vector<Term>& syms) {
  Valuation v;
  for (const auto& s : syms) v[s] = random_rational(rng, 3);
  return v;
}

}  // namespace

TEST_CASE("atoms are normalized to primitive polynomials against zero") {
  Polynomial x = P("x"), y = P("y");
  CHECK(Formula::atom(x * Rational(2), Rel::Le, N(4)) == Formula::atom(x - N(2), Rel::Le));
  CHECK(Formula::atom(N(3), Rel::Lt, x) == Formula::atom(x - N(3), Rel::Gt));
  CHECK(Formula::atom(x * Rational(1, 2), Rel::Eq, y * Rational(1, 3)) ==
        Formula::atom(x * Rational(3) - y * Rational(2), Rel::Eq));
  CHECK(Formula::atom(N(1), Rel::Lt, N(2)).is_true());
  CHECK(Formula::atom(x, Rel::Lt, x).is_false());
  CHECK(negate(Formula::atom(x, Rel::Le, y)) == Formula::atom(x, Rel::Gt, y));
}

TEST_CASE("smart constructors flatten, deduplicate and short-circuit") {
  Formula a = F("x < _1"), b = F("y >= _2");
  CHECK(Formula::conj({a, Formula::conj({b, a})}) == Formula::conj({b, a}));
  CHECK(Formula::conj({a, Formula::falsity()}).is_false());
  CHECK(Formula::disj({a, Formula::truth()}).is_true());
  CHECK(Formula::conj({}).is_true());
  CHECK(Formula::disj({}).is_false());
  CHECK(Formula::conj({a}) == a);
}

TEST_CASE("normalization is idempotent") {
  std::mt19937 rng(7);
  std::vector<Term> syms{C("x"), C("y"), C("z")};
  for (int k = 0; k < 200; ++k) {
    Formula f = random_formula(rng, syms, 3);
    for (const auto& a : atoms_of(f)) CHECK(atom_formula(a) == atom_formula(atom_formula(a).atom_value()));
    CHECK(parse_formula(to_string(f)) == f);
    CHECK(negate(negate(f)) == f);
  }
}

TEST_CASE("normalization preserves truth on random valuations") {
  std::mt19937 rng(11);
  std::vector<Term> syms{C("x"), C("y")};
  int checked = 0;
  for (int k = 0; k < 1000; ++k) {
    Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
    Polynomial lhs = P("x") * a + N(1) * c, rhs = P("y") * b;
    Valuation v = random_valuation(rng, syms);
    Rational diff = lhs.evaluate(v) - rhs.evaluate(v);
    static const Rel rels[] = {Rel::Eq, Rel::Ne, Rel::Le, Rel::Lt, Rel::Ge, Rel::Gt};
    for (Rel r : rels) {
      Formula f = Formula::atom(lhs, r, rhs);
      CHECK(evaluate(f, v) == holds(r, sgn(diff)));
      CHECK(evaluate(negate(f), v) != evaluate(f, v));
      ++checked;
    }
  }
  CHECK(checked == 6000);
}

TEST_CASE("as_linear_in splits a polynomial and rebuilds it") {
  std::mt19937 rng(3);
  Term x = C("x");
  for (int k = 0; k < 100; ++k) {
    Polynomial p = P("x") * P("y") * random_rational(rng) + P("x") * random_rational(rng) +
                   P("y") * random_rational(rng) + N(1) * random_rational(rng);
    auto [a, b] = p.as_linear_in(x);
    CHECK_FALSE(a.contains(x));
    CHECK_FALSE(b.contains(x));
    CHECK(a * P("x") + b == p);
  }
  CHECK_THROWS_AS((P("x") * P("x")).as_linear_in(x), DegreeError);
}

TEST_CASE("substitution composes") {
  Formula f = F("x + (_2 * y) < z");
  Substitution s1{{C("x"), Term::from_polynomial(P("y") + N(1))}};
  Substitution s2{{C("y"), Term::from_polynomial(P("z") * Rational(3))}};
  Substitution composed;
  for (const auto& [k, v] : s1) composed.emplace(k, substitute(v, s2));
  for (const auto& [k, v] : s2) composed.emplace(k, v);
  CHECK(substitute(substitute(f, s1), s2) == substitute(f, composed));
  CHECK(substitute(f, composed) == F("_8 * z + _1 < _0"));
}

TEST_CASE("bound variables are not captured") {
  Formula f = Formula::forall({Term::variable("x")}, Formula::atom(Polynomial::atom(Term::variable("x")), Rel::Le,
                                                                  Polynomial::atom(Term::variable("y"))));
  Formula g = substitute(f, {{Term::variable("y"), Term::variable("x")}});
  REQUIRE(g.kind() == FormulaKind::Forall);
  CHECK(g.bound()[0] != Term::variable("x"));
  CHECK(free_variables(g) == std::set<Term>{Term::variable("x")});
}

TEST_CASE("printer dialect") {
  CHECK(to_string(F("AND(x - y >= _0, OR(x <= _1, y > _2))")) == "AND(x - y >= _0, OR(x - _1 <= _0, y - _2 > _0))");
  CHECK(to_string(Formula::truth()) == "'true'");
  CHECK(to_string(F("(FORALL i0). d(i0) - s >= _0")) == "(FORALL i0). s - d(i0) <= _0");
}
