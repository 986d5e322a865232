#include "symelim/term.hpp"

#include "symelim/polynomial.hpp"

#include <functional>

namespace symelim {

struct Term::Node {
  TermKind kind;
  std::string name;
  std::string sort;
  std::vector<Term> args;
  std::unique_ptr<Polynomial> poly;
  std::size_t hash = 0;
  bool ground = true;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_rational(const Rational& q) {
  return mix(std::hash<std::string>{}(q.get_num().get_str()),
             std::hash<std::string>{}(q.get_den().get_str()));
}

std::size_t hash_polynomial(const Polynomial& p) {
  std::size_t h = 17;
  for (const auto& [m, c] : p.terms()) {
    for (const auto& [t, e] : m.factors()) h = mix(mix(h, t.hash()), e);
    h = mix(h, hash_rational(c));
  }
  return h;
}

}  // namespace

Term Term::variable(std::string name, std::string sort) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Variable;
  n->hash = mix(1, std::hash<std::string>{}(name));
  n->name = std::move(name);
  n->sort = std::move(sort);
  n->ground = false;
  return Term(std::move(n));
}

Term Term::constant(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Constant;
  n->hash = mix(2, std::hash<std::string>{}(name));
  n->name = std::move(name);
  n->sort = kScalarSort;
  return Term(std::move(n));
}

Term Term::apply(std::string function, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Apply;
  std::size_t h = mix(3, std::hash<std::string>{}(function));
  for (const auto& a : args) {
    h = mix(h, a.hash());
    n->ground = n->ground && a.is_ground();
  }
  n->hash = h;
  n->name = std::move(function);
  n->sort = kScalarSort;
  n->args = std::move(args);
  return Term(std::move(n));
}

Term Term::number(const Rational& value) { return from_polynomial(Polynomial::constant(value)); }

Term Term::from_polynomial(const Polynomial& p) {
  if (auto a = p.as_atom()) return *a;
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Arith;
  n->sort = kScalarSort;
  n->poly = std::make_unique<Polynomial>(p);
  n->hash = mix(4, hash_polynomial(p));
  for (const auto& t : p.atoms()) n->ground = n->ground && t.is_ground();
  return Term(std::move(n));
}

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const std::string& Term::sort() const { return node_->sort; }
std::span<const Term> Term::args() const { return node_->args; }
bool Term::is_ground() const { return node_->ground; }
std::size_t Term::hash() const { return node_->hash; }

const Polynomial& Term::polynomial() const {
  if (!node_->poly) throw TermError("polynomial() on non-arithmetic term " + name());
  return *node_->poly;
}

Polynomial Term::to_polynomial() const {
  if (node_->poly) return *node_->poly;
  return Polynomial::atom(*this);
}

bool Term::is_number() const { return node_->poly && node_->poly->is_constant(); }

int compare(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (a.kind() == TermKind::Arith) return compare(a.polynomial(), b.polynomial());
  if (int c = a.name().compare(b.name())) return c < 0 ? -1 : 1;
  if (a.kind() == TermKind::Variable) {
    if (int c = a.sort().compare(b.sort())) return c < 0 ? -1 : 1;
    return 0;
  }
  auto aa = a.args(), ba = b.args();
  if (aa.size() != ba.size()) return aa.size() < ba.size() ? -1 : 1;
  for (std::size_t i = 0; i < aa.size(); ++i)
    if (int c = compare(aa[i], ba[i])) return c;
  return 0;
}

Term substitute(const Term& t, const Substitution& sigma) {
  if (sigma.empty()) return t;
  switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Constant: {
      auto it = sigma.find(t);
      return it == sigma.end() ? t : it->second;
    }
    case TermKind::Apply: {
      auto it = sigma.find(t);
      if (it != sigma.end()) return it->second;
      std::vector<Term> args;
      args.reserve(t.args().size());
      bool changed = false;
      for (const auto& a : t.args()) {
        args.push_back(substitute(a, sigma));
        changed = changed || !(args.back() == a);
      }
      if (!changed) return t;
      Term rebuilt = Term::apply(t.name(), std::move(args));
      // A rewritten application may itself be a key (e.g. f(x) -> f(c) -> d).
      auto again = sigma.find(rebuilt);
      return again == sigma.end() ? rebuilt : again->second;
    }
    case TermKind::Arith:
      return Term::from_polynomial(t.polynomial().substitute(sigma));
  }
  return t;
}

void collect_variables(const Term& t, std::set<Term>& out) {
  if (t.is_ground()) return;
  switch (t.kind()) {
    case TermKind::Variable: out.insert(t); break;
    case TermKind::Constant: break;
    case TermKind::Apply:
      for (const auto& a : t.args()) collect_variables(a, out);
      break;
    case TermKind::Arith:
      for (const auto& a : t.polynomial().atoms()) collect_variables(a, out);
      break;
  }
}

void collect_applications(const Term& t, std::vector<Term>& out) {
  switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Constant: break;
    case TermKind::Apply:
      for (const auto& a : t.args()) collect_applications(a, out);
      out.push_back(t);
      break;
    case TermKind::Arith:
      for (const auto& a : t.polynomial().atoms()) collect_applications(a, out);
      break;
  }
}

void collect_constants(const Term& t, std::set<Term>& out) {
  switch (t.kind()) {
    case TermKind::Variable: break;
    case TermKind::Constant: out.insert(t); break;
    case TermKind::Apply:
      for (const auto& a : t.args()) collect_constants(a, out);
      break;
    case TermKind::Arith:
      for (const auto& a : t.polynomial().atoms()) collect_constants(a, out);
      break;
  }
}

int application_depth(const Term& t) {
  switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Constant: return 0;
    case TermKind::Apply: {
      int d = 0;
      for (const auto& a : t.args()) d = std::max(d, application_depth(a));
      return d + 1;
    }
    case TermKind::Arith: {
      int d = 0;
      for (const auto& a : t.polynomial().atoms()) d = std::max(d, application_depth(a));
      return d;
    }
  }
  return 0;
}

}  // namespace symelim
