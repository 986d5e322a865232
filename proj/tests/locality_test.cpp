#include "common.hpp"

#include "symelim/flatten.hpp"
#include "symelim/locality.hpp"

#include "doctest.h"

using namespace symelim;
using namespace symelim::testing;

namespace {

std::set<Term> argument_terms(const GroundTermSet& T) {
  std::set<Term> out;
  for (const auto& [f, tuples] : T)
    for (const auto& tuple : tuples) out.insert(tuple.begin(), tuple.end());
  return out;
}

// Every substitution of the clause variables by argument terms of T whose
// applications of `symbols` all have arguments in T.
std::set<Substitution> brute_force_instances(const Clause& c, const GroundTermSet& T,
                                             const std::set<std::string>& symbols) {
  std::vector<Term> pool;
  for (const auto& t : argument_terms(T)) pool.push_back(t);
  std::set<Substitution> out;
  if (pool.empty() && !c.vars.empty()) return out;
  std::vector<std::size_t> choice(c.vars.size(), 0);
  for (;;) {
    Substitution s;
    for (std::size_t k = 0; k < c.vars.size(); ++k) s.emplace(c.vars[k], pool[choice[k]]);
    bool ok = true;
    for (const auto& app : applications_of(substitute(c.matrix(), s))) {
      if (!symbols.count(app.name())) continue;
      auto it = T.find(app.name());
      std::vector<Term> args(app.args().begin(), app.args().end());
      if (it == T.end() || !it->second.count(args)) ok = false;
    }
    if (ok) out.insert(s);
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == pool.size()) choice[k++] = 0;
    if (k == choice.size()) break;
  }
  return out;
}

std::set<Substitution> sigmas(const std::vector<Instance>& instances) {
  std::set<Substitution> out;
  for (const auto& i : instances) out.insert(i.sigma);
  return out;
}

}  // namespace

TEST_CASE("est collects ground applications") {
  const ProblemSpec& p = corpus_task("water_tank_s1.yaml").problem;
  GroundTermSet T = est_terms(p.clauses, p.query, {"l"});
  REQUIRE(T.count("l"));
  CHECK(T.at("l") == std::set<std::vector<Term>>{{C("t0")}, {C("t1")}});

  const ProblemSpec& lane = corpus_task("lane_change.yaml").problem;
  GroundTermSet L = est_terms(lane.clauses, lane.query, {"front", "sidefront", "front1", "sidefront1"});
  CHECK(L.at("front") == std::set<std::vector<Term>>{{C("i0")}});
  CHECK(L.at("front1") == std::set<std::vector<Term>>{{C("i0")}});
  CHECK_FALSE(L.count("back"));
}

TEST_CASE("instances match a brute-force enumeration") {
  for (const char* file : {"water_tank_s1.yaml", "car_platoon_flow.yaml", "lane_change.yaml", "min_max_rates.yaml"}) {
    ProblemSpec p = corpus_task(file).problem;
    check_flat_linear(p);
    CAPTURE(file);
    for (int level = p.signature.max_level(); level >= 1; --level) {
      std::set<std::string> symbols = p.signature.symbols_at(level);
      GroundTermSet T = est_terms(p.clauses, p.query, symbols);
      for (std::size_t k = 0; k < p.clauses.size(); ++k) {
        if (p.clause_level(p.clauses[k]) != level) continue;
        // Variables occurring below no application of this level are bound
        // through guards; the oracle covers the other clauses only.
        std::set<Term> covered;
        for (const auto& app : applications_of(p.clauses[k].matrix()))
          if (symbols.count(app.name()))
            for (const auto& a : app.args()) collect_variables(a, covered);
        if (covered.size() != p.clauses[k].vars.size()) continue;
        auto got = instantiate(p.clauses[k], k, T, symbols, InstantiationMode::Local);
        CHECK(sigmas(got) == brute_force_instances(p.clauses[k], T, symbols));
      }
    }
  }
}

TEST_CASE("instantiation is monotone in the ground term set") {
  ProblemSpec p = corpus_task("car_platoon_flow.yaml").problem;
  check_flat_linear(p);
  std::set<std::string> symbols = p.signature.symbols_at(4);
  GroundTermSet small{{"pfp", {{C("i0")}}}, {"pp", {{C("i0")}}}};
  GroundTermSet large = small;
  large["pfp"].insert({C("i1")});
  large["pp"].insert({C("i1")});
  for (std::size_t k = 0; k < p.clauses.size(); ++k) {
    if (p.clause_level(p.clauses[k]) != 4) continue;
    auto a = sigmas(instantiate(p.clauses[k], k, small, symbols, InstantiationMode::Local));
    auto b = sigmas(instantiate(p.clauses[k], k, large, symbols, InstantiationMode::Local));
    CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
  }
}

TEST_CASE("purification round trip on every corpus problem") {
  for (const auto& file : corpus_task_files()) {
    for (const auto& t : parse_tasks(read_file(file), corpus_dir())) {
      CAPTURE(t.name);
      ReducedProblem rp = reduce_chain(t.problem);
      REQUIRE(rp.base_clauses.size() == rp.instances.size());
      REQUIRE(rp.goal.size() == rp.ground_goal.size());
      for (std::size_t k = 0; k < rp.instances.size(); ++k)
        CHECK(rp.definitions.expand(rp.base_clauses[k]) == rp.instances[k]);
      for (std::size_t k = 0; k < rp.goal.size(); ++k) CHECK(rp.definitions.expand(rp.goal[k]) == rp.ground_goal[k]);
      // Purified formulas mention no extension symbol.
      for (const auto& f : rp.base_clauses)
        for (const auto& s : function_symbols_of(f)) CHECK_FALSE(t.problem.signature.function(s));
    }
  }
}

TEST_CASE("Con0 relates every pair of definitions of the same symbol") {
  for (const auto& file : corpus_task_files()) {
    for (const auto& t : parse_tasks(read_file(file), corpus_dir())) {
      CAPTURE(t.name);
      ReducedProblem rp = reduce_chain(t.problem);
      const auto& defs = rp.definitions.definitions();
      std::set<std::pair<std::size_t, std::size_t>> pairs;
      for (const auto& c : rp.congruence) pairs.insert({std::min(c.first, c.second), std::max(c.first, c.second)});
      for (std::size_t a = 0; a < defs.size(); ++a)
        for (std::size_t b = a + 1; b < defs.size(); ++b)
          CHECK(pairs.count({a, b}) == (defs[a].term.name() == defs[b].term.name() ? 1u : 0u));
    }
  }
}

TEST_CASE("definition constants are fresh") {
  ReducedProblem rp = reduce_chain(corpus_task("water_tank_family.yaml").problem);
  std::set<std::string> names;
  for (const auto& d : rp.definitions.definitions()) {
    CHECK(names.insert(d.constant.name()).second);
    CHECK(d.constant.name().rfind("c_" + d.term.name() + "_", 0) == 0);
  }
}

TEST_CASE("uninstantiable clauses are reported") {
  ProblemSpec p = parse_problem(
      "Extension_functions := {(f,1,1)}\nClauses :=\n(FORALL x, y). f(x) <= y;\nQuery := f(c) > _0;\n");
  CHECK_THROWS_AS(reduce_chain(p), InstantiationError);
}
