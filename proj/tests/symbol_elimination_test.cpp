#include "common.hpp"

#include "symelim/symbol_elimination.hpp"

#include "doctest.h"

using namespace symelim;
using namespace symelim::testing;

namespace {

std::set<std::string> names(const std::vector<Term>& ts) {
  std::set<std::string> out;
  for (const auto& t : ts) out.insert(t.name());
  return out;
}

std::set<std::string> defined_names(const ReducedProblem& rp, const std::vector<Term>& ts) {
  std::set<std::string> out;
  for (const auto& t : ts) {
    const Definition* d = rp.definitions.definition_of(t);
    out.insert(d ? to_string(d->term) : t.name());
  }
  return out;
}

}  // namespace

TEST_CASE("classification of the water-tank constants") {
  Task t = corpus_task("water_tank_s1.yaml");
  ReducedProblem rp = reduce_task(t);
  ConstantClassification cls = classify_constants(rp, t.parameters);
  CHECK(names(cls.cf) == std::set<std::string>{"i", "o", "la", "lo"});
  CHECK(cls.cp.empty());
  CHECK(defined_names(rp, cls.c) == std::set<std::string>{"t0", "t1", "l(t0)", "l(t1)"});
}

TEST_CASE("parameter functions keep their terms and generalize their arguments") {
  Task t = corpus_task("min_max_rates.yaml");
  ReducedProblem rp = reduce_task(t);
  ConstantClassification cls = classify_constants(rp, t.parameters);
  CHECK(defined_names(rp, cls.cf) == std::set<std::string>{"m(c)", "M(c)"});
  CHECK(names(cls.cp) == std::set<std::string>{"c"});
  CHECK(defined_names(rp, cls.c) == std::set<std::string>{"t", "lmax", "L(c)", "Lp(c)"});
}

TEST_CASE("a parameter applied to an eliminated term is rejected") {
  Task t;
  t.parameters = {"f"};
  t.problem = parse_problem(
      "Extension_functions := {(g,1,1),(f,1,2)}\nClauses :=\n(FORALL x). f(x) >= _0;\n"
      "Query := f(g(c)) < _5;\n");
  CHECK_THROWS_AS(generate_constraint(t), ClassificationError);
}

TEST_CASE("check_sat returns a witness for a satisfiable goal") {
  Task t = corpus_task("water_tank_s1_check.yaml");
  SatResult r = check_sat(t);
  REQUIRE(r.verdict == SatVerdict::Sat);
  ReducedProblem rp = reduce_task(t);
  for (const auto& f : rp.ground_goal) {
    Valuation v = r.extended;
    for (const auto& s : indeterminates_of(f)) v.emplace(s, 0);
    CHECK(evaluate(f, v));
  }
  Task unsat = t;
  unsat.problem.query.push_back(F("t1 < t0"));
  CHECK(check_sat(unsat).verdict == SatVerdict::Unsat);
}

TEST_CASE("generated constraints refute their goals") {
  for (const auto& file : corpus_task_files()) {
    for (const auto& t : parse_tasks(read_file(file), corpus_dir())) {
      if (t.mode != TaskMode::GenerateConstraints) continue;
      CAPTURE(t.name);
      ConstraintResult r = generate_constraint(t);
      CHECK(constraint_refutes_goal(t, r));
    }
  }
}

TEST_CASE("constraints mention parameters and universal variables only") {
  for (const auto& file : corpus_task_files()) {
    for (const auto& t : parse_tasks(read_file(file), corpus_dir())) {
      if (t.mode != TaskMode::GenerateConstraints) continue;
      CAPTURE(t.name);
      ConstraintResult r = generate_constraint(t);
      std::set<std::string> params(t.parameters.begin(), t.parameters.end());
      for (const auto& c : constants_of(r.formula)) CHECK(params.count(c.name()));
      for (const auto& f : function_symbols_of(r.formula)) CHECK(params.count(f));
      CHECK(free_variables(r.formula).empty());
      CHECK(r.stats.atoms_after <= r.stats.atoms_before);
    }
  }
}

TEST_CASE("the constraint is the weakest one on sampled parameters") {
  // Where the constraint fails, the goal must be satisfiable.
  Task t = corpus_task("water_tank_s2.yaml");
  ConstraintResult r = generate_constraint(t);
  std::mt19937 rng(9);
  int violated = 0;
  for (int k = 0; k < 40; ++k) {
    Valuation v{{C("t0"), 0}, {C("t1"), 1}};
    for (const auto& p : t.parameters) v[C(p)] = random_rational(rng, 4);
    if (evaluate(r.formula, v)) continue;
    bool assumptions_hold = true;
    for (const auto& a : t.assumptions) assumptions_hold = assumptions_hold && evaluate(a, v);
    if (!assumptions_hold) continue;
    ++violated;
    Task fixed = t;
    for (const auto& p : t.parameters)
      fixed.problem.query.push_back(Formula::atom(P(p), Rel::Eq, Polynomial::constant(v[C(p)])));
    CHECK(check_sat(fixed).verdict == SatVerdict::Sat);
  }
  CHECK(violated > 0);
}
