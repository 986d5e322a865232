#pragma once

#include "symelim/formula.hpp"
#include "symelim/hybrid.hpp"
#include "symelim/printer.hpp"
#include "symelim/problem.hpp"
#include "symelim/qe.hpp"
#include "symelim/task.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace symelim::testing {

inline std::filesystem::path corpus_dir() { return SYMELIM_CORPUS_DIR; }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::vector<Task> corpus_tasks(const std::string& file) {
  return parse_tasks(read_file(corpus_dir() / file), corpus_dir());
}

inline Task corpus_task(const std::string& file) { return corpus_tasks(file).at(0); }

inline std::vector<std::filesystem::path> corpus_task_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir()))
    if (e.path().extension() == ".yaml") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

inline AutomatonFile corpus_automaton(const std::string& file) {
  return parse_automaton(read_file(corpus_dir() / "automata" / file));
}

inline Formula F(const std::string& text) { return parse_formula(text); }
inline Term C(const std::string& name) { return Term::constant(name); }
inline Polynomial P(const std::string& name) { return Polynomial::atom(C(name)); }
inline Polynomial N(long v) { return Polynomial::constant(Rational(v)); }

/// Equivalence of two formulas whenever every assumption holds.
inline bool equivalent_under(const Formula& a, const Formula& b, const std::vector<Formula>& assumptions = {}) {
  Formula hyp = Formula::conj(instantiate_assumptions(assumptions, Formula::conj({a, b})));
  return is_valid(implies(hyp, iff(a, b)));
}

/// Random rational with small numerator and denominator.
inline Rational random_rational(std::mt19937& rng, int range = 6) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 4);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

/// Disjunctive normal form of a quantifier-free formula as lists of atoms.
inline std::vector<std::vector<Atom>> dnf(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True:
      return {{}};
    case FormulaKind::False:
      return {};
    case FormulaKind::Atom:
      return {{f.atom_value()}};
    case FormulaKind::Or: {
      std::vector<std::vector<Atom>> out;
      for (const auto& c : f.children())
        for (auto& d : dnf(c)) out.push_back(std::move(d));
      return out;
    }
    case FormulaKind::And: {
      std::vector<std::vector<Atom>> out{{}};
      for (const auto& c : f.children()) {
        std::vector<std::vector<Atom>> next;
        for (const auto& left : out)
          for (const auto& right : dnf(c)) {
            auto both = left;
            both.insert(both.end(), right.begin(), right.end());
            next.push_back(std::move(both));
          }
        out = std::move(next);
      }
      return out;
    }
    default:
      throw std::invalid_argument("dnf of a quantified formula");
  }
}

/// Satisfiability of `f` after fixing `v`, decided by Fourier-Motzkin per disjunct.
inline bool fm_oracle(const Formula& f, const Valuation& v) {
  for (const auto& d : dnf(f))
    if (numeric_fm_sat(d, v)) return true;
  return false;
}

}  // namespace symelim::testing
