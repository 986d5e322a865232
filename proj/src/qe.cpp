#include "symelim/qe.hpp"

#include "symelim/printer.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace symelim {

QeError::QeError(const Term& symbol, const std::string& why)
    : std::runtime_error("cannot eliminate " + to_string(symbol) + ": " + why), symbol_(symbol) {}

namespace {

Formula atom_of(const Polynomial& p, Rel r) { return Formula::atom(p, r); }

bool mentions(const Formula& f, const Term& x) { return indeterminates_of(f).count(x) > 0; }

void check_not_nested(const Term& x, const Formula& phi) {
  for (const auto& app : applications_of(phi)) {
    for (const auto& arg : app.args()) {
      std::set<Term> inner;
      collect_variables(arg, inner);
      collect_constants(arg, inner);
      std::vector<Term> apps;
      collect_applications(arg, apps);
      inner.insert(apps.begin(), apps.end());
      if (arg == x || inner.count(x)) throw QeError(x, "occurs below the function symbol " + app.name());
    }
  }
}

std::pair<Polynomial, Polynomial> split(const Polynomial& p, const Term& x) {
  try {
    return p.as_linear_in(x);
  } catch (const DegreeError& e) {
    throw QeError(x, "occurs with degree " + std::to_string(e.degree()));
  }
}

// Candidate solution x = -b/a (+ epsilon), valid under `guard`, where the
// guard fixes the sign of `a` to `sign`.
struct TestPoint {
  Polynomial a, b;
  int sign;
  bool eps;
  Formula guard;
};

bool same_point(const TestPoint& p, const TestPoint& q) {
  return p.sign == q.sign && p.eps == q.eps && p.a == q.a && p.b == q.b;
}

// Value of c*x + d at x = -b/a has the sign of q (with a's sign folded in).
Polynomial shifted_value(const TestPoint& t, const Polynomial& c, const Polynomial& d) {
  Polynomial q = t.a * d - t.b * c;
  return t.sign < 0 ? -q : q;
}

Formula substitute_point(const Formula& phi, const Term& x, const TestPoint& t) {
  return map_atoms(phi, [&](const Atom& at) -> Formula {
    auto [c, d] = split(at.poly, x);
    if (c.is_zero()) return atom_formula(at);
    Polynomial q = shifted_value(t, c, d);
    if (!t.eps) return atom_of(q, at.rel);
    switch (at.rel) {
      case Rel::Lt:
        return Formula::disj({atom_of(q, Rel::Lt), Formula::conj({atom_of(q, Rel::Eq), atom_of(c, Rel::Lt)})});
      case Rel::Le:
        return Formula::disj({atom_of(q, Rel::Lt), Formula::conj({atom_of(q, Rel::Eq), atom_of(c, Rel::Le)})});
      case Rel::Gt:
        return Formula::disj({atom_of(q, Rel::Gt), Formula::conj({atom_of(q, Rel::Eq), atom_of(c, Rel::Gt)})});
      case Rel::Ge:
        return Formula::disj({atom_of(q, Rel::Gt), Formula::conj({atom_of(q, Rel::Eq), atom_of(c, Rel::Ge)})});
      case Rel::Eq:
        return Formula::conj({atom_of(q, Rel::Eq), atom_of(c, Rel::Eq)});
      case Rel::Ne:
        return Formula::disj({atom_of(q, Rel::Ne), atom_of(c, Rel::Ne)});
    }
    return atom_formula(at);
  });
}

Formula substitute_minus_infinity(const Formula& phi, const Term& x) {
  return map_atoms(phi, [&](const Atom& at) -> Formula {
    auto [c, d] = split(at.poly, x);
    if (c.is_zero()) return atom_formula(at);
    switch (at.rel) {
      case Rel::Lt:
      case Rel::Le:
        return Formula::disj({atom_of(c, Rel::Gt), Formula::conj({atom_of(c, Rel::Eq), atom_of(d, at.rel)})});
      case Rel::Gt:
      case Rel::Ge:
        return Formula::disj({atom_of(c, Rel::Lt), Formula::conj({atom_of(c, Rel::Eq), atom_of(d, at.rel)})});
      case Rel::Eq:
        return Formula::conj({atom_of(c, Rel::Eq), atom_of(d, Rel::Eq)});
      case Rel::Ne:
        return Formula::disj({atom_of(c, Rel::Ne), atom_of(d, Rel::Ne)});
    }
    return atom_formula(at);
  });
}

// Test points for the lower-bound direction.
std::vector<TestPoint> lower_points(const Formula& phi, const Term& x) {
  std::vector<TestPoint> out;
  auto add = [&](TestPoint t) {
    for (const auto& o : out)
      if (same_point(o, t)) return;
    out.push_back(std::move(t));
  };
  for (const auto& at : atoms_of(phi)) {
    auto [a, b] = split(at.poly, x);
    if (a.is_zero()) continue;
    bool eps = at.rel == Rel::Ne || at.rel == Rel::Lt || at.rel == Rel::Gt;
    // Signs of a for which the atom bounds x from below (Eq/Ne: either sign).
    std::vector<int> signs;
    switch (at.rel) {
      case Rel::Eq:
      case Rel::Ne:
        signs = {1, -1};
        break;
      case Rel::Le:
      case Rel::Lt:
        signs = {-1};
        break;
      case Rel::Ge:
      case Rel::Gt:
        signs = {1};
        break;
    }
    for (int s : signs) {
      if (a.is_constant()) {
        if (sgn(a.constant_term()) != s) continue;
        add(TestPoint{a, b, s, eps, Formula::truth()});
      } else {
        add(TestPoint{a, b, s, eps, atom_of(a, s > 0 ? Rel::Gt : Rel::Lt)});
      }
    }
  }
  return out;
}

std::size_t count_points(const Formula& phi, const Term& x, bool lower) {
  std::size_t n = 0;
  for (const auto& at : atoms_of(phi)) {
    auto [a, b] = split(at.poly, x);
    if (a.is_zero()) continue;
    if (!a.is_constant() || at.rel == Rel::Eq || at.rel == Rel::Ne) {
      ++n;
      continue;
    }
    int s = sgn(a.constant_term());
    bool is_lower = (at.rel == Rel::Le || at.rel == Rel::Lt) ? s < 0 : s > 0;
    if (is_lower == lower) ++n;
  }
  return n;
}

Formula eliminate_conjunctive(const Term& x, const Formula& phi);

// Uses a top-level equation to avoid a full test-point disjunction.
std::optional<Formula> gauss(const Term& x, const Formula& phi) {
  std::vector<Formula> parts;
  if (phi.kind() == FormulaKind::And) parts.assign(phi.children().begin(), phi.children().end());
  else parts.push_back(phi);
  std::optional<std::size_t> parametric;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (!parts[k].is_atom() || parts[k].atom_value().rel != Rel::Eq) continue;
    auto [a, b] = split(parts[k].atom_value().poly, x);
    if (a.is_zero()) continue;
    if (a.is_constant()) {
      Polynomial root = b * Rational(-1 / a.constant_term());
      return substitute(phi, Substitution{{x, Term::from_polynomial(root)}});
    }
    if (!parametric) parametric = k;
  }
  if (!parametric) return std::nullopt;
  const Atom& eq = parts[*parametric].atom_value();
  auto [a, b] = split(eq.poly, x);
  std::vector<Formula> cases;
  for (int s : {1, -1}) {
    TestPoint t{a, b, s, false, atom_of(a, s > 0 ? Rel::Gt : Rel::Lt)};
    cases.push_back(Formula::conj({t.guard, substitute_point(phi, x, t)}));
  }
  std::vector<Formula> rest = parts;
  rest[*parametric] = Formula::truth();
  cases.push_back(
      Formula::conj({atom_of(a, Rel::Eq), atom_of(b, Rel::Eq), eliminate_conjunctive(x, Formula::conj(rest))}));
  return Formula::disj(std::move(cases));
}

Formula eliminate_conjunctive(const Term& x, const Formula& phi) {
  if (!mentions(phi, x)) return phi;
  if (phi.kind() == FormulaKind::Or) {
    std::vector<Formula> parts;
    for (const auto& c : phi.children()) parts.push_back(eliminate_conjunctive(x, c));
    return Formula::disj(std::move(parts));
  }
  if (phi.kind() == FormulaKind::And) {
    std::vector<Formula> free, bound;
    for (const auto& c : phi.children()) (mentions(c, x) ? bound : free).push_back(c);
    if (!free.empty()) {
      free.push_back(eliminate_conjunctive(x, Formula::conj(std::move(bound))));
      return Formula::conj(std::move(free));
    }
  }
  if (auto g = gauss(x, phi)) return *g;

  Formula target = phi;
  if (count_points(phi, x, false) < count_points(phi, x, true)) {
    // Upper bounds are fewer: eliminate x' = -x instead.
    target = map_atoms(phi, [&](const Atom& at) {
      return Formula::atom(at.poly.substitute(x, -Polynomial::atom(x)), at.rel);
    });
  }
  std::vector<Formula> cases{substitute_minus_infinity(target, x)};
  for (const auto& t : lower_points(target, x)) cases.push_back(Formula::conj({t.guard, substitute_point(target, x, t)}));
  return Formula::disj(std::move(cases));
}

struct Score {
  bool eligible = true;
  std::size_t parametric = 0, occurrences = 0;
  unsigned degree = 0;
};

Score score(const Term& x, const std::vector<Atom>& atoms) {
  Score s;
  for (const auto& at : atoms) {
    unsigned d = at.poly.degree_in(x);
    if (d == 0) continue;
    s.degree = std::max(s.degree, d);
    ++s.occurrences;
    if (d > 1) {
      s.eligible = false;
      continue;
    }
    auto [a, b] = at.poly.as_linear_in(x);
    if (!a.is_constant()) ++s.parametric;
  }
  return s;
}

// Best symbol to eliminate next among `candidates`; throws if none is linear.
Term pick(const std::vector<Term>& candidates, const Formula& phi) {
  std::vector<Atom> atoms = atoms_of(phi);
  std::optional<Term> best;
  Score best_score;
  for (const auto& x : candidates) {
    Score s = score(x, atoms);
    if (!s.eligible) continue;
    if (!best || std::tie(s.parametric, s.occurrences) < std::tie(best_score.parametric, best_score.occurrences)) {
      best = x;
      best_score = s;
    }
  }
  if (!best) {
    const Term& x = candidates.front();
    throw QeError(x, "occurs with degree " + std::to_string(score(x, atoms).degree));
  }
  return *best;
}

bool is_linear_conjunction(const std::vector<Atom>& atoms) {
  for (const auto& at : atoms)
    for (const auto& [m, c] : at.poly.terms())
      if (m.degree() > 1) return false;
  return true;
}

// Extends `model` by a value of x satisfying every atom of `phi`.
void extend_model(const Term& x, const Formula& phi, Valuation& model) {
  for (const auto& t : indeterminates_of(phi))
    if (!(t == x)) model.emplace(t, 0);
  std::vector<std::pair<Rational, Rational>> lines;  // a*x + b
  std::vector<Rational> roots;
  for (const auto& at : atoms_of(phi)) {
    Polynomial p = at.poly.partial_evaluate(model);
    auto [a, b] = p.as_linear_in(x);
    if (!a.is_constant() || !b.is_constant()) throw std::logic_error("model extension left free symbols");
    if (a.constant_term() != 0) roots.push_back(-b.constant_term() / a.constant_term());
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  std::vector<Rational> candidates;
  if (roots.empty()) candidates.push_back(0);
  for (std::size_t k = 0; k < roots.size(); ++k) {
    candidates.push_back(roots[k]);
    if (k + 1 < roots.size()) candidates.push_back((roots[k] + roots[k + 1]) / 2);
  }
  if (!roots.empty()) {
    candidates.push_back(roots.front() - 1);
    candidates.push_back(roots.back() + 1);
  }
  for (const auto& v : candidates) {
    model[x] = v;
    if (evaluate(phi, model)) return;
  }
  throw std::logic_error("no value satisfies the formula after elimination of " + to_string(x));
}

// Drops the disjuncts of a conjunction that contradict its atoms, or
// returns false when the atoms alone are inconsistent.
Formula propagate(const Formula& conjunction) {
  std::vector<Atom> units;
  for (const auto& c : conjunction.children())
    if (c.is_atom()) units.push_back(c.atom_value());
  if (units.empty() || !is_linear_conjunction(units)) return conjunction;
  if (!fm_model(units)) return Formula::falsity();
  bool changed = false;
  std::vector<Formula> parts;
  for (const auto& c : conjunction.children()) {
    if (c.kind() != FormulaKind::Or) {
      parts.push_back(c);
      continue;
    }
    std::vector<Formula> alts;
    for (const auto& a : c.children()) {
      if (a.is_atom()) {
        std::vector<Atom> with = units;
        with.push_back(a.atom_value());
        if (is_linear_conjunction(with) && !fm_model(with)) {
          changed = true;
          continue;
        }
      }
      alts.push_back(a);
    }
    parts.push_back(Formula::disj(std::move(alts)));
  }
  return changed ? Formula::conj(std::move(parts)) : conjunction;
}

std::optional<Valuation> search(const Formula& input) {
  Formula phi = simplify_context(input);
  if (phi.is_true()) return Valuation{};
  if (phi.is_false()) return std::nullopt;
  if (phi.kind() == FormulaKind::Or) {
    for (const auto& c : phi.children())
      if (auto m = search(c)) return m;
    return std::nullopt;
  }
  if (phi.kind() == FormulaKind::And) {
    const Formula* split_on = nullptr;
    for (const auto& c : phi.children())
      if (c.kind() == FormulaKind::Or && (!split_on || c.children().size() < split_on->children().size()))
        split_on = &c;
    if (split_on) {
      Formula narrowed = propagate(phi);
      if (narrowed.is_false()) return std::nullopt;
      if (narrowed != phi) return search(narrowed);
      std::vector<Formula> rest;
      for (const auto& c : phi.children())
        if (&c != split_on) rest.push_back(c);
      for (const auto& alt : split_on->children()) {
        std::vector<Formula> parts = rest;
        parts.push_back(alt);
        if (auto m = search(Formula::conj(std::move(parts)))) return m;
      }
      return std::nullopt;
    }
  }
  std::vector<Atom> atoms = atoms_of(phi);
  if (is_linear_conjunction(atoms)) return fm_model(atoms);
  std::set<Term> syms = indeterminates_of(phi);
  Term x = pick(std::vector<Term>(syms.begin(), syms.end()), phi);
  check_not_nested(x, phi);
  auto model = search(eliminate_conjunctive(x, phi));
  if (!model) return std::nullopt;
  extend_model(x, phi, *model);
  return model;
}

}  // namespace

Formula vs_eliminate(const Term& x, const Formula& phi) {
  if (!is_quantifier_free(phi)) throw std::invalid_argument("vs_eliminate expects a quantifier-free formula");
  if (!mentions(phi, x)) return phi;
  check_not_nested(x, phi);
  return eliminate_conjunctive(x, phi);
}

Formula eliminate_block(const std::vector<Term>& vars, const Formula& input, EliminationTrace* trace) {
  Formula phi = is_quantifier_free(input) ? input : eliminate_quantifiers(input);
  std::vector<Term> remaining(vars.begin(), vars.end());
  for (;;) {
    std::set<Term> present = indeterminates_of(phi);
    std::erase_if(remaining, [&](const Term& t) { return !present.count(t); });
    if (remaining.empty()) return phi;
    Term x = pick(remaining, phi);
    if (trace) trace->steps.emplace_back(x, phi);
    phi = simplify_context(vs_eliminate(x, phi));
  }
}

Formula eliminate_quantifiers(const Formula& phi) {
  switch (phi.kind()) {
    case FormulaKind::False:
    case FormulaKind::True:
    case FormulaKind::Atom:
      return phi;
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> parts;
      for (const auto& c : phi.children()) parts.push_back(eliminate_quantifiers(c));
      return phi.kind() == FormulaKind::And ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
    case FormulaKind::Exists: {
      Formula body = eliminate_quantifiers(phi.body());
      return eliminate_block(std::vector<Term>(phi.bound().begin(), phi.bound().end()), body);
    }
    case FormulaKind::Forall: {
      Formula body = eliminate_quantifiers(phi.body());
      std::vector<Term> vars(phi.bound().begin(), phi.bound().end());
      return negate(eliminate_block(vars, negate(body)));
    }
  }
  return phi;
}

std::optional<Valuation> find_model(const Formula& phi) {
  Formula qf = is_quantifier_free(phi) ? phi : eliminate_quantifiers(phi);
  auto model = search(qf);
  if (model) {
    // Symbols dropped by simplification are unconstrained.
    for (const auto& t : indeterminates_of(qf)) model->emplace(t, 0);
  }
  return model;
}

bool is_satisfiable(const Formula& phi) { return find_model(phi).has_value(); }

bool is_valid(const Formula& phi) {
  Formula neg = negate(phi);
  if (!is_quantifier_free(neg)) neg = eliminate_quantifiers(neg);

  // Ackermann's reduction: name every application, innermost first, and add
  // functional consistency between same-symbol applications.
  std::set<Term> app_set = applications_of(neg);
  std::vector<Term> apps(app_set.begin(), app_set.end());
  if (apps.empty()) return !is_satisfiable(neg);
  std::stable_sort(apps.begin(), apps.end(),
                   [](const Term& a, const Term& b) { return application_depth(a) < application_depth(b); });
  Substitution sigma;
  std::map<Term, Term> name_of;  // purified application -> constant
  std::vector<std::pair<Term, Term>> named;
  unsigned counter = 0;
  for (const auto& app : apps) {
    Term purified = substitute(app, sigma);
    auto it = name_of.find(purified);
    if (it == name_of.end()) {
      Term c = Term::constant("#ack" + std::to_string(++counter));
      it = name_of.emplace(purified, c).first;
      named.emplace_back(purified, c);
    }
    sigma.insert_or_assign(app, it->second);
  }
  std::vector<Formula> parts{substitute(neg, sigma)};
  for (std::size_t i = 0; i < named.size(); ++i) {
    for (std::size_t j = i + 1; j < named.size(); ++j) {
      const Term& f = named[i].first;
      const Term& g = named[j].first;
      if (f.name() != g.name() || f.args().size() != g.args().size()) continue;
      std::vector<Formula> eqs;
      for (std::size_t k = 0; k < f.args().size(); ++k) eqs.push_back(Formula::atom(f.args()[k], Rel::Eq, g.args()[k]));
      parts.push_back(implies(Formula::conj(std::move(eqs)),
                              Formula::atom(named[i].second, Rel::Eq, named[j].second)));
    }
  }
  return !is_satisfiable(Formula::conj(std::move(parts)));
}

}  // namespace symelim
