#include "common.hpp"

#include "symelim/flatten.hpp"

#include "doctest.h"

using namespace symelim;
using namespace symelim::testing;

TEST_CASE("water-tank flow problem") {
  Task t = corpus_task("water_tank_s1.yaml");
  CHECK(t.name == "water-tank-flow-s1");
  CHECK(t.mode == TaskMode::GenerateConstraints);
  CHECK(t.parameters == std::vector<std::string>{"i", "o", "la", "lo"});
  CHECK(t.assumptions.size() == 5);
  CHECK(t.slfq_query);
  const ProblemSpec& p = t.problem;
  CHECK(p.signature.functions.size() == 1);
  CHECK(p.signature.level_of("l") == 1);
  CHECK(p.clauses.size() == 1);
  CHECK(p.query.size() == 6);
  CHECK(to_string(p.clauses[0]) == "(FORALL t). l(t) >= _0;");
}

TEST_CASE("car-platoon problem has four levels") {
  const ProblemSpec& p = corpus_task("car_platoon_flow.yaml").problem;
  CHECK(p.clauses.size() == 7);
  CHECK(p.signature.max_level() == 4);
  CHECK(p.signature.level_of("p") == 1);
  CHECK(p.signature.level_of("pf") == 2);
  CHECK(p.signature.level_of("pp") == 3);
  CHECK(p.signature.level_of("pfp") == 4);
  std::vector<int> levels;
  for (const auto& c : p.clauses) levels.push_back(p.clause_level(c));
  CHECK(levels == std::vector<int>{4, 3, 4, 4, 3, 4, 2});
  CHECK(p.query.size() == 2);
}

TEST_CASE("family task with a wildcard assumption") {
  Task t = corpus_task("water_tank_family.yaml");
  CHECK(t.parameters.size() == 7);
  CHECK(t.assumptions.size() == 6);
  CHECK(to_string(t.assumptions[3]) == "(FORALL x). out(x) >= _0");
  CHECK(t.problem.clauses.size() == 6);
  CHECK(t.problem.query.size() == 4);
  Task lane = corpus_task("lane_change_per_car.yaml");
  CHECK(lane.assumptions[0].kind() == FormulaKind::Forall);
  CHECK(function_symbols_of(lane.assumptions[0]) == std::set<std::string>{"dchange"});
}

TEST_CASE("undeclared constants are created implicitly") {
  const ProblemSpec& p = corpus_task("water_tank_family.yaml").problem;
  CHECK(p.signature.implicit_constants.count("i0"));
  CHECK(p.signature.implicit_constants.count("n"));
  CHECK(p.signature.constants.count("n"));
}

TEST_CASE("print then parse reproduces every corpus problem") {
  for (const auto& file : corpus_task_files()) {
    for (const auto& t : parse_tasks(read_file(file), corpus_dir())) {
      ProblemSpec q = parse_problem(print_problem(t.problem));
      CAPTURE(t.name);
      REQUIRE(q.clauses.size() == t.problem.clauses.size());
      for (std::size_t k = 0; k < q.clauses.size(); ++k)
        CHECK(to_string(q.clauses[k]) == to_string(t.problem.clauses[k]));
      CHECK(q.query == t.problem.query);
      CHECK(q.signature.functions.size() == t.problem.signature.functions.size());
      CHECK(print_problem(q) == print_problem(t.problem));
    }
  }
}

TEST_CASE("diagnostics carry positions") {
  try {
    parse_problem("Extension_functions := {(f,1,1)}\nClauses :=\n(FORALL x). f(x) >=;\nQuery := f(c) < _0;\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    REQUIRE_FALSE(e.diagnostics().empty());
    CHECK(e.diagnostics()[0].span.line == 3);
  }
  CHECK_THROWS_AS(parse_problem("Extension_functions := {(f,1,1)}\nBogus := {}\n"), ParseError);
  CHECK_THROWS_AS(parse_formula("AND(x < _1"), ParseError);
  CHECK_THROWS_AS(parse_tasks("tasks:\n  t:\n    mode: SOLVE\n"), ParseError);
  try {
    parse_formula("x <");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).rfind("error at line 1, column", 0) == 0);
  }
}

TEST_CASE("flattening agrees with the original clause on instances") {
  // Oracle: for i in {2, 3, 4} and n = 4, the original clause instance holds
  // iff the flattened clause holds for every value of the fresh variable.
  ProblemSpec p = corpus_task("water_tank_family.yaml").problem;
  Clause original = p.clauses[1];
  check_flat_linear(p);
  const Clause& flat = p.clauses[1];
  CHECK_FALSE(is_flat(original, p.signature));
  CHECK(is_flat(flat, p.signature));
  REQUIRE(flat.vars.size() == 2);
  bool first = flat.vars[0] == original.vars[0];
  Term index = flat.vars[first ? 0 : 1], fresh = flat.vars[first ? 1 : 0];

  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Valuation v{{C("n"), 4}};
    for (int k = 0; k <= 5; ++k) {
      v[Term::apply("in", {Term::number(k)})] = random_rational(rng, 2);
      v[Term::apply("out", {Term::number(k)})] = random_rational(rng, 2);
    }
    for (int i = 2; i <= 4; ++i) {
      Formula o = substitute(original.matrix(), {{original.vars[0], Term::number(i)}});
      bool all = true;
      for (int w = 0; w <= 5; ++w) {
        Substitution s{{index, Term::number(i)}, {fresh, Term::number(w)}};
        all = all && evaluate(substitute(flat.matrix(), s), v);
      }
      CHECK(evaluate(o, v) == all);
    }
  }
}

TEST_CASE("automaton files parse") {
  AutomatonFile wt = corpus_automaton("water_tank.ha");
  REQUIRE(wt.plha);
  CHECK(wt.plha->modes.size() == 2);
  CHECK(wt.plha->edges.size() == 2);
  CHECK(wt.plha->variables == std::vector<std::string>{"L"});
  AutomatonFile fam = corpus_automaton("water_tank_family.ha");
  REQUIRE(fam.family);
  CHECK(fam.family->link_clauses.size() == 2);
  CHECK_FALSE(fam.family->invariants_at_end);
  AutomatonFile lane = corpus_automaton("lane_change.ha");
  REQUIRE(lane.family);
  REQUIRE(lane.family->updates.size() == 1);
  CHECK(lane.family->updates[0].cases[0].assignments.size() == 2);
  CHECK_THROWS_AS(parse_automaton("automaton a; mode s { inv: x < ; }"), ParseError);
}
