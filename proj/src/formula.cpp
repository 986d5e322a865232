#include "symelim/formula.hpp"

#include <algorithm>

namespace symelim {

Rel negate(Rel r) {
  switch (r) {
    case Rel::Eq: return Rel::Ne;
    case Rel::Ne: return Rel::Eq;
    case Rel::Le: return Rel::Gt;
    case Rel::Lt: return Rel::Ge;
    case Rel::Ge: return Rel::Lt;
    case Rel::Gt: return Rel::Le;
  }
  return r;
}

Rel mirror(Rel r) {
  switch (r) {
    case Rel::Le: return Rel::Ge;
    case Rel::Lt: return Rel::Gt;
    case Rel::Ge: return Rel::Le;
    case Rel::Gt: return Rel::Lt;
    default: return r;
  }
}

bool holds(Rel r, int sign) {
  switch (r) {
    case Rel::Eq: return sign == 0;
    case Rel::Ne: return sign != 0;
    case Rel::Le: return sign <= 0;
    case Rel::Lt: return sign < 0;
    case Rel::Ge: return sign >= 0;
    case Rel::Gt: return sign > 0;
  }
  return false;
}

const char* rel_symbol(Rel r) {
  switch (r) {
    case Rel::Eq: return "=";
    case Rel::Ne: return "<>";
    case Rel::Le: return "<=";
    case Rel::Lt: return "<";
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
  }
  return "?";
}

int compare(const Atom& a, const Atom& b) {
  if (int c = compare(a.poly, b.poly)) return c;
  if (a.rel != b.rel) return a.rel < b.rel ? -1 : 1;
  return 0;
}

struct Formula::Node {
  FormulaKind kind;
  Atom atom{Polynomial(), Rel::Eq};
  std::vector<Formula> children;
  std::vector<Term> bound;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const std::shared_ptr<const Formula::Node>& true_node() {
  static const auto n = [] {
    auto p = std::make_shared<Formula::Node>();
    p->kind = FormulaKind::True;
    p->hash = 11;
    return std::shared_ptr<const Formula::Node>(p);
  }();
  return n;
}

const std::shared_ptr<const Formula::Node>& false_node() {
  static const auto n = [] {
    auto p = std::make_shared<Formula::Node>();
    p->kind = FormulaKind::False;
    p->hash = 7;
    return std::shared_ptr<const Formula::Node>(p);
  }();
  return n;
}

}  // namespace

Formula::Formula() : node_(true_node()) {}
Formula Formula::truth() { return Formula(true_node()); }
Formula Formula::falsity() { return Formula(false_node()); }
Formula Formula::boolean(bool value) { return value ? truth() : falsity(); }

Formula Formula::atom(const Polynomial& lhs, Rel rel, const Polynomial& rhs) {
  Polynomial p = lhs - rhs;
  if (p.is_constant()) {
    Rational c = p.constant_term();
    return boolean(holds(rel, sgn(c)));
  }
  auto [g, q] = p.primitive();
  if (q.leading_coefficient() < 0) {
    q = -q;
    rel = mirror(rel);
  }
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Atom;
  n->atom = Atom{std::move(q), rel};
  std::size_t h = mix(13, static_cast<std::size_t>(rel));
  for (const auto& [m, c] : n->atom.poly.terms()) {
    for (const auto& [t, e] : m.factors()) h = mix(mix(h, t.hash()), e);
    h = mix(h, std::hash<std::string>{}(c.get_str()));
  }
  n->hash = h;
  return Formula(std::move(n));
}

Formula Formula::atom(const Term& lhs, Rel rel, const Term& rhs) {
  return atom(lhs.to_polynomial(), rel, rhs.to_polynomial());
}

Formula atom_formula(const Atom& a) { return Formula::atom(a.poly, a.rel); }

Formula Formula::junction(FormulaKind kind, std::vector<Formula> parts) {
  const bool is_and = kind == FormulaKind::And;
  std::vector<Formula> flat;
  flat.reserve(parts.size());
  for (auto& p : parts) {
    if (p.kind() == kind) {
      for (const auto& c : p.children()) flat.push_back(c);
    } else if (p.is_true()) {
      if (!is_and) return truth();
    } else if (p.is_false()) {
      if (is_and) return falsity();
    } else {
      flat.push_back(std::move(p));
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  // Complementary literals: same polynomial, complementary relations.
  for (std::size_t i = 0; i + 1 < flat.size(); ++i) {
    if (!flat[i].is_atom()) continue;
    const Atom& a = flat[i].atom_value();
    for (std::size_t j = i + 1; j < flat.size() && flat[j].is_atom(); ++j) {
      const Atom& b = flat[j].atom_value();
      if (!(a.poly == b.poly)) break;
      if (b.rel == negate(a.rel)) return boolean(!is_and);
    }
  }
  if (flat.empty()) return boolean(is_and);
  if (flat.size() == 1) return flat.front();
  auto n = std::make_shared<Node>();
  n->kind = kind;
  std::size_t h = is_and ? 17 : 19;
  for (const auto& c : flat) h = mix(h, c.hash());
  n->hash = h;
  n->children = std::move(flat);
  return Formula(std::move(n));
}

Formula Formula::conj(std::vector<Formula> parts) { return junction(FormulaKind::And, std::move(parts)); }
Formula Formula::disj(std::vector<Formula> parts) { return junction(FormulaKind::Or, std::move(parts)); }

Formula Formula::quantifier(FormulaKind kind, std::vector<Term> vars, const Formula& body) {
  std::set<Term> free = free_variables(body);
  std::vector<Term> kept;
  for (const auto& v : vars) {
    if (!v.is_variable()) throw TermError("only variables can be quantified");
    if (free.count(v) && std::find(kept.begin(), kept.end(), v) == kept.end()) kept.push_back(v);
  }
  if (kept.empty()) return body;
  Formula inner = body;
  if (body.kind() == kind) {
    for (const auto& v : body.bound())
      if (std::find(kept.begin(), kept.end(), v) == kept.end()) kept.push_back(v);
    inner = body.body();
  }
  auto n = std::make_shared<Node>();
  n->kind = kind;
  std::size_t h = kind == FormulaKind::Forall ? 23 : 29;
  for (const auto& v : kept) h = mix(h, v.hash());
  n->hash = mix(h, inner.hash());
  n->bound = std::move(kept);
  n->children = {inner};
  return Formula(std::move(n));
}

Formula Formula::forall(std::vector<Term> vars, const Formula& body) {
  return quantifier(FormulaKind::Forall, std::move(vars), body);
}
Formula Formula::exists(std::vector<Term> vars, const Formula& body) {
  return quantifier(FormulaKind::Exists, std::move(vars), body);
}

FormulaKind Formula::kind() const { return node_->kind; }
const Atom& Formula::atom_value() const { return node_->atom; }
std::span<const Formula> Formula::children() const { return node_->children; }
std::span<const Term> Formula::bound() const { return node_->bound; }
const Formula& Formula::body() const { return node_->children.front(); }
std::size_t Formula::hash() const { return node_->hash; }

int compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: return 0;
    case FormulaKind::Atom: return compare(a.atom_value(), b.atom_value());
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      auto ab = a.bound(), bb = b.bound();
      if (ab.size() != bb.size()) return ab.size() < bb.size() ? -1 : 1;
      for (std::size_t i = 0; i < ab.size(); ++i)
        if (int c = compare(ab[i], bb[i])) return c;
      return compare(a.body(), b.body());
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      auto ac = a.children(), bc = b.children();
      if (ac.size() != bc.size()) return ac.size() < bc.size() ? -1 : 1;
      for (std::size_t i = 0; i < ac.size(); ++i)
        if (int c = compare(ac[i], bc[i])) return c;
      return 0;
    }
  }
  return 0;
}

Formula negate(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True: return Formula::falsity();
    case FormulaKind::False: return Formula::truth();
    case FormulaKind::Atom: return Formula::atom(f.atom_value().poly, negate(f.atom_value().rel));
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> parts;
      for (const auto& c : f.children()) parts.push_back(negate(c));
      return f.kind() == FormulaKind::And ? Formula::disj(std::move(parts)) : Formula::conj(std::move(parts));
    }
    case FormulaKind::Forall:
      return Formula::exists({f.bound().begin(), f.bound().end()}, negate(f.body()));
    case FormulaKind::Exists:
      return Formula::forall({f.bound().begin(), f.bound().end()}, negate(f.body()));
  }
  return f;
}

Formula implies(const Formula& a, const Formula& b) { return Formula::disj({negate(a), b}); }
Formula iff(const Formula& a, const Formula& b) { return Formula::conj({implies(a, b), implies(b, a)}); }

namespace {

void free_vars_rec(const Formula& f, std::set<Term>& bound, std::set<Term>& out) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: return;
    case FormulaKind::Atom: {
      std::set<Term> vs;
      for (const auto& t : f.atom_value().poly.atoms()) collect_variables(t, vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case FormulaKind::And:
    case FormulaKind::Or:
      for (const auto& c : f.children()) free_vars_rec(c, bound, out);
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      std::vector<Term> added;
      for (const auto& v : f.bound())
        if (bound.insert(v).second) added.push_back(v);
      free_vars_rec(f.body(), bound, out);
      for (const auto& v : added) bound.erase(v);
      return;
    }
  }
}

template <typename Fn>
void for_each_atom(const Formula& f, Fn&& fn) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: return;
    case FormulaKind::Atom: fn(f.atom_value()); return;
    default:
      for (const auto& c : f.children()) for_each_atom(c, fn);
  }
}

Term fresh_variable(const Term& v, const std::set<std::string>& avoid) {
  for (unsigned k = 1;; ++k) {
    std::string name = v.name() + "_" + std::to_string(k);
    if (!avoid.count(name)) return Term::variable(name, v.sort());
  }
}

void names_in(const Term& t, std::set<std::string>& out) {
  std::set<Term> vs;
  collect_variables(t, vs);
  for (const auto& v : vs) out.insert(v.name());
}

}  // namespace

std::set<Term> free_variables(const Formula& f) {
  std::set<Term> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

Formula map_atoms(const Formula& f, const std::function<Formula(const Atom&)>& fn) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: return f;
    case FormulaKind::Atom: return fn(f.atom_value());
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> parts;
      parts.reserve(f.children().size());
      for (const auto& c : f.children()) parts.push_back(map_atoms(c, fn));
      return f.kind() == FormulaKind::And ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
    case FormulaKind::Forall:
      return Formula::forall({f.bound().begin(), f.bound().end()}, map_atoms(f.body(), fn));
    case FormulaKind::Exists:
      return Formula::exists({f.bound().begin(), f.bound().end()}, map_atoms(f.body(), fn));
  }
  return f;
}

Formula substitute(const Formula& f, const Substitution& sigma) {
  if (sigma.empty()) return f;
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: return f;
    case FormulaKind::Atom:
      return Formula::atom(f.atom_value().poly.substitute(sigma), f.atom_value().rel);
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> parts;
      parts.reserve(f.children().size());
      for (const auto& c : f.children()) parts.push_back(substitute(c, sigma));
      return f.kind() == FormulaKind::And ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      Substitution inner;
      std::set<std::string> range_names;
      for (const auto& [k, v] : sigma) {
        if (std::find(f.bound().begin(), f.bound().end(), k) != f.bound().end()) continue;
        inner.emplace(k, v);
        names_in(v, range_names);
      }
      std::vector<Term> vars;
      std::set<std::string> avoid = range_names;
      for (const auto& v : free_variables(f.body())) avoid.insert(v.name());
      for (const auto& b : f.bound()) {
        if (range_names.count(b.name())) {
          Term fresh = fresh_variable(b, avoid);
          avoid.insert(fresh.name());
          inner.insert_or_assign(b, fresh);
          vars.push_back(fresh);
        } else {
          vars.push_back(b);
        }
      }
      Formula body = substitute(f.body(), inner);
      return f.kind() == FormulaKind::Forall ? Formula::forall(std::move(vars), body)
                                             : Formula::exists(std::move(vars), body);
    }
  }
  return f;
}

std::set<Term> constants_of(const Formula& f) {
  std::set<Term> out;
  for_each_atom(f, [&](const Atom& a) {
    for (const auto& t : a.poly.atoms()) collect_constants(t, out);
  });
  return out;
}

std::set<Term> applications_of(const Formula& f) {
  std::set<Term> out;
  for_each_atom(f, [&](const Atom& a) {
    std::vector<Term> apps;
    for (const auto& t : a.poly.atoms()) collect_applications(t, apps);
    out.insert(apps.begin(), apps.end());
  });
  return out;
}

std::set<std::string> function_symbols_of(const Formula& f) {
  std::set<std::string> out;
  for (const auto& t : applications_of(f)) out.insert(t.name());
  return out;
}

std::set<Term> indeterminates_of(const Formula& f) {
  std::set<Term> out;
  for_each_atom(f, [&](const Atom& a) {
    auto s = a.poly.atoms();
    out.insert(s.begin(), s.end());
  });
  return out;
}

std::size_t count_atoms(const Formula& f) {
  std::size_t n = 0;
  for_each_atom(f, [&](const Atom&) { ++n; });
  return n;
}

std::vector<Atom> atoms_of(const Formula& f) {
  std::vector<Atom> out;
  for_each_atom(f, [&](const Atom& a) { out.push_back(a); });
  return out;
}

bool is_quantifier_free(const Formula& f) {
  if (f.is_quantifier()) return false;
  for (const auto& c : f.children())
    if (!is_quantifier_free(c)) return false;
  return true;
}

bool evaluate(const Atom& a, const Valuation& v) { return holds(a.rel, sgn(a.poly.evaluate(v))); }

bool evaluate(const Formula& f, const Valuation& v) {
  switch (f.kind()) {
    case FormulaKind::True: return true;
    case FormulaKind::False: return false;
    case FormulaKind::Atom: return evaluate(f.atom_value(), v);
    case FormulaKind::And:
      for (const auto& c : f.children())
        if (!evaluate(c, v)) return false;
      return true;
    case FormulaKind::Or:
      for (const auto& c : f.children())
        if (evaluate(c, v)) return true;
      return false;
    default: throw TermError("cannot evaluate a quantified formula");
  }
}

Formula Clause::matrix() const {
  std::vector<Formula> lits;
  for (const auto& g : guard) lits.push_back(negate(g));
  for (const auto& h : head) lits.push_back(h);
  return Formula::disj(std::move(lits));
}

Formula Clause::to_formula() const { return Formula::forall(vars, matrix()); }

}  // namespace symelim
