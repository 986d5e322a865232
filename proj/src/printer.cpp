#include "symelim/printer.hpp"

namespace symelim {

std::string format_rational(const Rational& q) {
  if (q < 0) return "- " + format_rational(-q);
  std::string s = "_" + q.get_num().get_str();
  if (q.get_den() != 1) s += "/" + q.get_den().get_str();
  return s;
}

namespace {

std::string monomial_string(const Monomial& m, const Rational& magnitude) {
  if (m.is_one()) return format_rational(magnitude);
  std::vector<std::string> parts;
  if (magnitude != 1) parts.push_back(format_rational(magnitude));
  for (const auto& [t, e] : m.factors())
    for (unsigned k = 0; k < e; ++k) parts.push_back(to_string(t));
  if (parts.size() == 1) return parts.front();
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " * " : "") + parts[i];
  return s + ")";
}

}  // namespace

std::string to_string(const Term& t) {
  switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Constant: return t.name();
    case TermKind::Apply: {
      std::string s = t.name() + "(";
      for (std::size_t i = 0; i < t.args().size(); ++i) s += (i ? ", " : "") + to_string(t.args()[i]);
      return s + ")";
    }
    case TermKind::Arith: return to_string(t.polynomial());
  }
  return "?";
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "_0";
  std::string acc;
  bool compound = false;
  for (const auto& [m, c] : p.terms()) {
    std::string term = monomial_string(m, abs(c));
    if (acc.empty()) {
      acc = c < 0 ? "- " + term : term;
      compound = c < 0;
    } else {
      if (compound) acc = "(" + acc + ")";
      acc += (c < 0 ? " - " : " + ") + term;
      compound = true;
    }
  }
  return acc;
}

std::string to_string(const Atom& a) { return to_string(a.poly) + " " + rel_symbol(a.rel) + " _0"; }

std::string to_string(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True: return "'true'";
    case FormulaKind::False: return "'false'";
    case FormulaKind::Atom: return to_string(f.atom_value());
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::string s = f.kind() == FormulaKind::And ? "AND(" : "OR(";
      for (std::size_t i = 0; i < f.children().size(); ++i) s += (i ? ", " : "") + to_string(f.children()[i]);
      return s + ")";
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      std::string s = f.kind() == FormulaKind::Forall ? "(FORALL " : "(EXISTS ";
      for (std::size_t i = 0; i < f.bound().size(); ++i) s += (i ? ", " : "") + f.bound()[i].name();
      return s + "). " + to_string(f.body());
    }
  }
  return "?";
}

std::string to_string(const Clause& c) {
  std::string s;
  if (!c.vars.empty()) {
    s = "(FORALL ";
    for (std::size_t i = 0; i < c.vars.size(); ++i) s += (i ? ", " : "") + c.vars[i].name();
    s += "). ";
  }
  auto join = [](const std::vector<Formula>& fs) {
    std::string r;
    for (std::size_t i = 0; i < fs.size(); ++i) r += (i ? ", " : "") + to_string(fs[i]);
    return r;
  };
  if (!c.guard.empty()) s += join(c.guard) + " --> ";
  s += c.head.empty() ? "'false'" : join(c.head);
  return s + ";";
}

}  // namespace symelim
