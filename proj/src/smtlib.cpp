#include "symelim/smtlib.hpp"

#include "symelim/printer.hpp"

#include <cctype>
#include <sstream>

namespace symelim {

namespace {

std::string symbol(const std::string& name) {
  bool simple = !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0]));
  for (char c : name) simple = simple && (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.');
  return simple ? name : "|" + name + "|";
}

std::string number(const Rational& q) {
  auto whole = [](const mpz_class& z) {
    return sgn(z) < 0 ? "(- " + mpz_class(-z).get_str() + ")" : z.get_str();
  };
  if (q.get_den() == 1) return whole(q.get_num());
  return "(/ " + whole(q.get_num()) + " " + q.get_den().get_str() + ")";
}

std::string term(const Term& t) {
  if (t.is_apply()) throw std::logic_error("extension term " + to_string(t) + " left in a reduced problem");
  if (t.kind() == TermKind::Arith) throw std::logic_error("unexpected compound atom " + to_string(t));
  return symbol(t.name());
}

std::string polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::vector<std::string> summands;
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::string> factors;
    if (c != 1 || m.is_one()) factors.push_back(number(c));
    for (const auto& [x, e] : m.factors())
      for (unsigned k = 0; k < e; ++k) factors.push_back(term(x));
    if (factors.size() == 1) {
      summands.push_back(factors.front());
      continue;
    }
    std::string s = "(*";
    for (const auto& f : factors) s += " " + f;
    summands.push_back(s + ")");
  }
  if (summands.size() == 1) return summands.front();
  std::string s = "(+";
  for (const auto& x : summands) s += " " + x;
  return s + ")";
}

std::string formula(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True: return "true";
    case FormulaKind::False: return "false";
    case FormulaKind::Atom: {
      const Atom& a = f.atom_value();
      std::string p = polynomial(a.poly);
      switch (a.rel) {
        case Rel::Ne: return "(not (= " + p + " 0))";
        default: return std::string("(") + rel_symbol(a.rel) + " " + p + " 0)";
      }
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::string s = f.kind() == FormulaKind::And ? "(and" : "(or";
      for (const auto& c : f.children()) s += " " + formula(c);
      return s + ")";
    }
    default: throw std::logic_error("quantified formula in a ground SMT-LIB export");
  }
}

void script(std::ostringstream& os, const std::vector<Formula>& assertions) {
  std::set<Term> constants;
  for (const auto& a : assertions) {
    auto s = indeterminates_of(a);
    constants.insert(s.begin(), s.end());
  }
  for (const auto& c : constants) os << "(declare-const " << term(c) << " Real)\n";
  for (const auto& a : assertions)
    if (!a.is_true()) os << "(assert " << formula(a) << ")\n";
  os << "(check-sat)\n";
}

}  // namespace

std::string export_smtlib(const std::vector<Formula>& assertions) {
  std::ostringstream os;
  os << "(set-logic QF_NRA)\n";
  script(os, assertions);
  return os.str();
}

std::string export_smtlib(const ReducedProblem& rp) {
  std::ostringstream os;
  os << "(set-logic QF_NRA)\n";
  for (const auto& d : rp.definitions.definitions())
    os << "; " << d.constant.name() << " = " << to_string(rp.definitions.expand(d.term)) << "\n";
  std::vector<Formula> all = rp.base_clauses;
  all.insert(all.end(), rp.goal.begin(), rp.goal.end());
  for (const auto& c : rp.congruence) all.push_back(c.formula);
  script(os, all);
  return os.str();
}

}  // namespace symelim
