#include "common.hpp"

#include "symelim/symbol_elimination.hpp"

#include "doctest.h"

using namespace symelim;
using namespace symelim::testing;

namespace {

FlowEndpoints tank_endpoints() {
  FlowEndpoints e;
  e.derivative.emplace(C("L'"), std::pair{C("L0"), C("L1")});
  e.state.insert(C("L"));
  return e;
}

Formula flow_of(const std::string& text) {
  std::vector<Formula> parts;
  Formula f = F(text);
  if (f.kind() == FormulaKind::And) parts.assign(f.children().begin(), f.children().end());
  else parts.push_back(f);
  return underline_flow(parts, tank_endpoints(), C("t0"), C("t1"));
}

Formula constraint_of(const Vc& vc) { return generate_constraint(to_task(vc)).formula; }

Family lanes(const std::string& cases) {
  std::string text = "family lanes;\nparameters: dchange, dsafe;\nvariables: pos;\nlinks: front, sidefront;\n"
                     "update u {\n  " + cases + "\n}\nsafety: pos(front) - pos >= dsafe;\n";
  return *parse_automaton(text).family;
}

}  // namespace

TEST_CASE("flows are encoded over the interval endpoints") {
  Polynomial dt = P("t1") - P("t0");
  CHECK(flow_of("L' = in - out") == Formula::atom(P("L1") - P("L0"), Rel::Eq, (P("in") - P("out")) * dt));
  CHECK(flow_of("L' <= _2") == Formula::atom(P("L1") - P("L0"), Rel::Le, N(2) * dt));
  CHECK(flow_of("_3 * L' >= _0") == Formula::atom(P("L1"), Rel::Ge, P("L0")));
  CHECK(flow_of("AND(L' >= a, L' <= b)") ==
        Formula::conj({flow_of("L' >= a"), flow_of("L' <= b")}));
}

TEST_CASE("unsupported flows are rejected") {
  CHECK_THROWS_AS(flow_of("L' < _1"), VcError);
  CHECK_THROWS_AS(flow_of("L' + L <= _1"), VcError);
  CHECK_THROWS_AS(flow_of("L' * L' = _1"), VcError);
}

TEST_CASE("the flow encoding does not depend on the endpoint names") {
  FlowEndpoints e;
  e.derivative.emplace(C("L'"), std::pair{C("u0"), C("u1")});
  Formula renamed = underline_flow({F("L' = in")}, e, C("s0"), C("s1"));
  Substitution back{{C("u0"), C("L0")}, {C("u1"), C("L1")}, {C("s0"), C("t0")}, {C("s1"), C("t1")}};
  CHECK(substitute(renamed, back) == flow_of("L' = in"));
}

TEST_CASE("water-tank conditions") {
  Plha a = *corpus_automaton("water_tank.ha").plha;
  std::vector<Vc> vcs = plha_vcs(a);
  std::vector<std::string> names;
  for (const auto& v : vcs) names.push_back(v.name);
  CHECK(names == std::vector<std::string>{"water_tank-init-s1", "water_tank-init-s2", "water_tank-flow-s1",
                                          "water_tank-flow-s2", "water_tank-jump-s1-s2", "water_tank-jump-s2-s1"});
  std::vector<Formula> assume = vcs[0].assumptions;
  CHECK(equivalent_under(constraint_of(vcs[0]), F("OR(l1 - la < _0, l1 - lo <= _0)"), assume));
  CHECK(equivalent_under(constraint_of(vcs[1]), F("OR(l2 - la >= _0, l2 - lo <= _0)"), assume));
  CHECK(equivalent_under(constraint_of(vcs[3]), F("la - lo <= _0"), assume));
  CHECK(constraint_of(vcs[4]).is_true());
  CHECK(constraint_of(vcs[5]).is_true());
  CHECK_THROWS_AS(a.mode("s3"), VcError);
}

TEST_CASE("car-platoon flow condition") {
  Family f = *corpus_automaton("car_platoon.ha").family;
  Vc vc = sflha_flow_vc(f);
  CHECK(equivalent_under(constraint_of(vc),
                         F("AND(dappr - dsafe >= _0, OR(dappr - dsafe = _0, dappr - drec <= _0))"),
                         vc.assumptions));
}

TEST_CASE("update guards are exclusive in the corpus") {
  for (const char* file : {"lane_change.ha", "lane_change_per_car.ha"}) {
    Family f = *corpus_automaton(file).family;
    for (const auto& u : f.updates) CHECK(overlapping_cases(f, u).empty());
  }
  Family overlap = lanes("case: pos(sidefront) - pos > dchange --> front' = sidefront;\n"
                         "  case: pos(sidefront) - pos > dsafe --> sidefront' = front;");
  CHECK(overlapping_cases(overlap, overlap.updates[0]) == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
  Family disjoint = lanes("case: pos(sidefront) - pos > dchange --> front' = sidefront;\n"
                          "  case: pos(sidefront) - pos <= dchange --> sidefront' = front;");
  CHECK(overlapping_cases(disjoint, disjoint.updates[0]).empty());
}

TEST_CASE("an identity update needs no parameter constraint") {
  Family f = lanes("case: pos(sidefront) - pos > dchange --> front' = front;");
  std::vector<Vc> vcs = sflha_topology_vcs(f, f.updates[0]);
  REQUIRE(vcs.size() == 1);
  CHECK(constraint_of(vcs[0]).is_true());
}

TEST_CASE("lane-change condition") {
  Family f = *corpus_automaton("lane_change.ha").family;
  Vc vc = sflha_topology_vcs(f, f.updates[0]).at(0);
  CHECK(equivalent_under(constraint_of(vc), F("dchange - dsafe >= _0"), vc.assumptions));
}

TEST_CASE("generated task files parse back") {
  std::vector<Vc> vcs = plha_vcs(*corpus_automaton("water_tank.ha").plha);
  std::vector<Vc> fam = family_vcs(*corpus_automaton("water_tank_family.ha").family);
  vcs.insert(vcs.end(), fam.begin(), fam.end());
  std::vector<Task> tasks = parse_tasks(print_task_file(vcs, "generated"));
  REQUIRE(tasks.size() == vcs.size());
  for (std::size_t k = 0; k < vcs.size(); ++k) {
    CAPTURE(vcs[k].name);
    Task direct = to_task(vcs[k]);
    CHECK(tasks[k].name == direct.name);
    CHECK(tasks[k].parameters == direct.parameters);
    CHECK(tasks[k].assumptions == direct.assumptions);
    CHECK(print_problem(tasks[k].problem) == print_problem(direct.problem));
  }
}
