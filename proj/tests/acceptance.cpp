// Acceptance suite: one PASS/FAIL line per criterion. Equivalences are exact
// (validity checks), the oracle comparison tolerates zero mismatches, and
// every task must finish within kTaskBudget seconds.
#include "common.hpp"

#include "symelim/locality.hpp"
#include "symelim/symbol_elimination.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <functional>
#include <iostream>

using namespace symelim;
using namespace symelim::testing;

namespace {

constexpr double kTaskBudget = 10.0;
constexpr int kOracleRounds = 1000;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

struct Criterion {
  std::string id;
  std::string title;
  std::function<Verdict()> check;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Runs one task and records a budget overrun in `v`.
ConstraintResult generate(const Task& t, Verdict& v) {
  auto start = std::chrono::steady_clock::now();
  ConstraintResult r = generate_constraint(t);
  double s = seconds_since(start);
  v.require(s < kTaskBudget, t.name + " took " + std::to_string(s) + " s");
  return r;
}

// Replaces the universally bound variables by shared constants so that two
// closed constraints can be compared by validity of their matrices.
Formula open(const Formula& f) {
  if (f.kind() != FormulaKind::Forall) return f;
  Substitution s;
  for (std::size_t k = 0; k < f.bound().size(); ++k) s.emplace(f.bound()[k], C("u#" + std::to_string(k)));
  return substitute(f.body(), s);
}

void expect_equivalent(Verdict& v, const Task& t, const std::string& expected) {
  ConstraintResult r = generate(t, v);
  bool ok = equivalent_under(open(r.formula), open(F(expected)), t.assumptions);
  v.require(ok, t.name + " gave " + to_string(r.formula));
  if (ok && v.detail.empty()) v.detail = to_string(r.formula);
}

Verdict golden(const std::string& file, const std::string& expected) {
  Verdict v;
  expect_equivalent(v, corpus_task(file), expected);
  return v;
}

std::vector<std::string> first_criterion_files() {
  return {"water_tank_s1.yaml",         "water_tank_s1_ordered.yaml", "water_tank_s2.yaml",
          "water_tank_s2_ordered.yaml", "min_max_rates.yaml",         "min_max_rates_ordered.yaml",
          "car_platoon_flow.yaml",      "car_platoon_flow_per_car.yaml", "lane_change.yaml",
          "lane_change_per_car.yaml",   "water_tank_family.yaml"};
}

Verdict water_tank_family() {
  // The expected constraint mentions t0, t1 and no in(i); it is read as
  // holding for every t0 < t1, and in(i) is tied down by the link clauses.
  const std::string expected =
      "(FORALL i0). OR(i0 - _1 < _0, i0 - n > _0,"
      " AND((((in0 * t0) - (in0 * t1)) - la) + lo >= _0, i0 - _1 = _0, out(i0) - omin < _0),"
      " AND(i0 - _2 >= _0, out(i0) - omin < _0, (((out(i0 - _1)*t0) - (out(i0 - _1)*t1)) - la) + lo >= _0),"
      " AND(i0 - _2 >= _0, out(i0 - _1) - omin < _0),"
      " AND(i0 - _2 >= _0, out(i0 - _1) - out(i0) <= _0),"
      " AND(i0 - _1 = _0, out(i0) - in0 >= _0),"
      " AND(out(i0) > _0, out(i0) - omin < _0))";
  Verdict v;
  Task t = corpus_task("water_tank_family.yaml");
  ConstraintResult r = generate(t, v);
  Formula ours = r.formula, theirs = F(expected);
  v.require(ours.kind() == FormulaKind::Forall && ours.bound().size() == 1, "expected one universal variable");
  if (!v.pass) return v;
  Term n = C("n"), t0 = C("t0"), t1 = C("t1");
  std::vector<Formula> links{F("in(_1) = in0"), F("in(_2) = out(_1)")};
  for (int k = 1; k <= 2; ++k) {
    Substitution at{{ours.bound()[0], Term::number(k)}, {n, Term::number(2)}};
    Formula mine = substitute(ours.body(), at);
    Substitution at_theirs{{theirs.bound()[0], Term::number(k)}, {n, Term::number(2)}};
    Formula body = substitute(theirs.body(), at_theirs);
    Formula reference = negate(eliminate_quantifiers(
        Formula::exists({Term::variable("s0"), Term::variable("s1")},
                        substitute(Formula::conj({F("t0 < t1"), negate(body)}),
                                   {{t0, Term::variable("s0")}, {t1, Term::variable("s1")}}))));
    std::vector<Formula> hyp = t.assumptions;
    hyp.insert(hyp.end(), links.begin(), links.end());
    v.require(equivalent_under(mine, reference, hyp), "differs at i0 = " + std::to_string(k));
  }
  if (v.pass) v.detail = "agrees for i0 = 1, 2 with n = 2";
  return v;
}

Verdict soundness() {
  Verdict v;
  std::size_t n = 0;
  for (const auto& file : first_criterion_files()) {
    Task t = corpus_task(file);
    ConstraintResult r = generate(t, v);
    v.require(constraint_refutes_goal(t, r), t.name + " not refuted");
    ++n;
  }
  if (v.pass) v.detail = std::to_string(n) + " constraints refute their goals";
  return v;
}

Verdict oracle_agreement() {
  Verdict v;
  unsigned seed = 1;
  for (const char* file : {"water_tank_s1.yaml", "water_tank_s2.yaml", "min_max_rates.yaml"}) {
    Task t = corpus_task(file);
    ReducedProblem rp = reduce_task(t);
    ConstantClassification cls = classify_constants(rp, t.parameters);
    Formula body = rp.conjunction();
    Formula qf = eliminate_block(cls.c, body);
    std::vector<Term> kept(cls.cf.begin(), cls.cf.end());
    kept.insert(kept.end(), cls.cp.begin(), cls.cp.end());
    std::mt19937 rng(seed++);
    int mismatches = 0;
    for (int k = 0; k < kOracleRounds; ++k) {
      Valuation val;
      for (const auto& s : kept) val[s] = random_rational(rng, 4);
      if (evaluate(qf, val) != fm_oracle(body, val)) ++mismatches;
    }
    v.require(mismatches == 0, t.name + ": " + std::to_string(mismatches) + " mismatches");
  }
  if (v.pass) v.detail = "0 mismatches in 3 x " + std::to_string(kOracleRounds) + " valuations";
  return v;
}

Verdict purification_round_trip() {
  Verdict v;
  std::size_t n = 0;
  for (const auto& file : corpus_task_files())
    for (const auto& t : parse_tasks(read_file(file), corpus_dir())) {
      ReducedProblem rp = reduce_chain(t.problem);
      for (std::size_t k = 0; k < rp.instances.size(); ++k)
        v.require(rp.definitions.expand(rp.base_clauses[k]) == rp.instances[k], t.name + " instance " + std::to_string(k));
      for (std::size_t k = 0; k < rp.goal.size(); ++k)
        v.require(rp.definitions.expand(rp.goal[k]) == rp.ground_goal[k], t.name + " goal " + std::to_string(k));
      ++n;
    }
  if (v.pass) v.detail = std::to_string(n) + " problems";
  return v;
}

Verdict init_synthesis() {
  Verdict v;
  Plha a = *corpus_automaton("water_tank.ha").plha;
  Vc s1 = vc_init(a, a.mode("s1")), s2 = vc_init(a, a.mode("s2"));
  expect_equivalent(v, to_task(s1), "OR(l1 - lo <= _0, l1 - la < _0)");
  expect_equivalent(v, to_task(s2), "OR(l2 - lo <= _0, l2 - la >= _0)");
  s1.assumptions.push_back(F("l1 >= la"));
  s2.assumptions.push_back(F("l2 < la"));
  v.detail.clear();
  for (auto [vc, expected] : {std::pair{s1, "l1 - lo <= _0"}, std::pair{s2, "l2 - lo <= _0"}}) {
    ConstraintResult r = generate(to_task(vc), v);
    v.require(r.formula == F(expected), vc.name + " gave " + to_string(r.formula));
  }
  if (v.pass) v.detail = "l1 <= lo and l2 <= lo under the mode invariants";
  return v;
}

// Projection of a reduced problem onto the given symbols.
Formula project(const Formula& body, const std::set<std::string>& keep) {
  std::vector<Term> drop;
  for (const auto& c : indeterminates_of(body))
    if (!keep.count(c.name())) drop.push_back(c);
  return eliminate_block(drop, body);
}

Verdict vc_fidelity() {
  Verdict v;
  Plha a = *corpus_automaton("water_tank.ha").plha;
  std::set<std::string> params(a.parameters.begin(), a.parameters.end());
  const std::pair<const char*, const char*> systems[] = {
      {"s1", "AND(l <= lo, t0 < t, l >= la, lp - l = (in - out) * (t - t0), lp >= la, lp > lo)"},
      {"s2", "AND(l <= lo, t0 < t, l < la, lp - l = in * (t - t0), lp < la, lp > lo)"},
  };
  for (const auto& [mode, text] : systems) {
    Vc vc = vc_flow(a, a.mode(mode));
    auto start = std::chrono::steady_clock::now();
    Formula generated = project(reduce_chain(vc.problem).conjunction(), params);
    Formula expected = project(Formula::conj({F(text), F("l >= _0"), F("lp >= _0")}), params);
    v.require(seconds_since(start) < kTaskBudget, vc.name + " over budget");
    v.require(is_valid(iff(generated, expected)), vc.name + " differs from the reference system");
  }
  for (const auto& e : a.edges) {
    Vc vc = vc_jump(a, e);
    v.require(check_sat(reduce_chain(vc.problem)).verdict == SatVerdict::Unsat, vc.name + " is satisfiable");
  }
  if (v.pass) v.detail = "flow systems match, jump conditions unsat";
  return v;
}

Verdict property_suites() {
  Verdict v;
  std::size_t atoms = 0, problems = 0, updates = 0;
  for (const auto& file : corpus_task_files())
    for (const auto& t : parse_tasks(read_file(file), corpus_dir())) {
      ++problems;
      ReducedProblem rp = reduce_chain(t.problem);
      for (const auto& a : atoms_of(rp.conjunction())) {
        ++atoms;
        v.require(Formula::atom(a.poly, a.rel) == atom_formula(a), t.name + ": atom not normalized");
      }
      const auto& defs = rp.definitions.definitions();
      std::set<std::pair<std::size_t, std::size_t>> pairs;
      for (const auto& c : rp.congruence) pairs.insert({std::min(c.first, c.second), std::max(c.first, c.second)});
      for (std::size_t x = 0; x < defs.size(); ++x)
        for (std::size_t y = x + 1; y < defs.size(); ++y)
          if (defs[x].term.name() == defs[y].term.name())
            v.require(pairs.count({x, y}) == 1, t.name + ": missing congruence axiom");
      if (t.mode != TaskMode::GenerateConstraints) continue;
      ConstraintResult r = generate(t, v);
      std::set<std::string> params(t.parameters.begin(), t.parameters.end());
      for (const auto& c : constants_of(r.formula)) v.require(params.count(c.name()), t.name + ": leaks " + c.name());
      for (const auto& f : function_symbols_of(r.formula)) v.require(params.count(f), t.name + ": leaks " + f);
      v.require(free_variables(r.formula).empty(), t.name + ": free variables");
    }
  for (const char* file : {"lane_change.ha", "lane_change_per_car.ha"}) {
    Family f = *corpus_automaton(file).family;
    for (const auto& u : f.updates) {
      ++updates;
      v.require(overlapping_cases(f, u).empty(), f.name + ": overlapping guards in " + u.name);
    }
  }
  if (v.pass)
    v.detail = std::to_string(atoms) + " atoms, " + std::to_string(problems) + " problems, " +
               std::to_string(updates) + " updates";
  return v;
}

std::vector<Criterion> criteria() {
  return {
      {"1a", "water-tank flow s1",
       [] { return golden("water_tank_s1.yaml", "OR(la - lo >= _0, i - o <= _0)"); }},
      {"1b", "water-tank flow s1 with la < lo", [] { return golden("water_tank_s1_ordered.yaml", "i - o <= _0"); }},
      {"1c", "water-tank flow s2",
       [] {
         Verdict v = golden("water_tank_s2.yaml", "la - lo <= _0");
         Verdict w = golden("water_tank_s2_ordered.yaml", "'true'");
         v.require(w.pass, w.detail);
         return v;
       }},
      {"1d", "minimum and maximum rates",
       [] {
         Verdict v = golden("min_max_rates.yaml", "(FORALL x). OR(m(x) - M(x) > _0, M(x) <= _0)");
         ConstraintResult r = generate(corpus_task("min_max_rates_ordered.yaml"), v);
         v.require(open(r.formula) == open(F("(FORALL x). M(x) <= _0")), "ordered variant gave " + to_string(r.formula));
         return v;
       }},
      {"1e", "car platoon flow",
       [] {
         return golden("car_platoon_flow.yaml", "AND(dappr - dsafe >= _0, OR(dappr - dsafe = _0, dappr - drec <= _0))");
       }},
      {"1f", "car platoon flow, per-car thresholds",
       [] {
         return golden("car_platoon_flow_per_car.yaml",
                       "(FORALL i0). AND(dsafe - dappr(i0) <= _0, OR(dappr(i0) - drec(i0) <= _0, dsafe - dappr(i0) = _0))");
       }},
      {"1g", "lane change",
       [] {
         Verdict v = golden("lane_change.yaml", "dchange - dsafe >= _0");
         Verdict w = golden("lane_change_per_car.yaml", "(FORALL i0). dsafe - dchange(i0) <= _0");
         v.require(w.pass, w.detail);
         return v;
       }},
      {"1h", "water-tank family", water_tank_family},
      {"2", "soundness re-check", soundness},
      {"3", "elimination vs Fourier-Motzkin oracle", oracle_agreement},
      {"4", "purification round trip", purification_round_trip},
      {"5", "init-condition synthesis", init_synthesis},
      {"6", "verification-condition fidelity", vc_fidelity},
      {"7", "property suites", property_suites},
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  std::vector<std::string> only;
  app.add_option("criteria", only, "Criterion ids to run (default: all)");
  CLI11_PARSE(app, argc, argv);

  int failures = 0;
  for (const auto& c : criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    char time[32];
    std::snprintf(time, sizeof time, "%.2f s", seconds_since(start));
    std::cout << (v.pass ? "PASS " : "FAIL ") << c.id << "  " << c.title << " (" << time << "): " << v.detail
              << std::endl;
    if (!v.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
