#include "common.hpp"

#include "symelim/symbol_elimination.hpp"

#include "doctest.h"

using namespace symelim;
using namespace symelim::testing;

namespace {

bool same(const Formula& a, const Formula& b) { return is_valid(iff(a, b)); }

// Number of valuations on which the eliminated formula and the
// Fourier-Motzkin decision of the original body disagree.
int oracle_mismatches(const std::string& file, int rounds, unsigned seed) {
  Task t = corpus_task(file);
  ReducedProblem rp = reduce_task(t);
  ConstantClassification cls = classify_constants(rp, t.parameters);
  Formula body = rp.conjunction();
  Formula qf = eliminate_block(cls.c, body);
  std::vector<Term> kept(cls.cf.begin(), cls.cf.end());
  kept.insert(kept.end(), cls.cp.begin(), cls.cp.end());
  std::mt19937 rng(seed);
  int mismatches = 0;
  for (int k = 0; k < rounds; ++k) {
    Valuation v;
    for (const auto& s : kept) v[s] = random_rational(rng, 4);
    if (evaluate(qf, v) != fm_oracle(body, v)) ++mismatches;
  }
  return mismatches;
}

}  // namespace

TEST_CASE("virtual substitution on small examples") {
  Term x = C("x");
  CHECK(same(vs_eliminate(x, F("AND(a < x, x < b)")), F("a < b")));
  CHECK(same(vs_eliminate(x, F("AND(a <= x, x <= b)")), F("a <= b")));
  CHECK(same(vs_eliminate(x, F("AND(x = y + _1, x > _2)")), F("y > _1")));
  CHECK(same(vs_eliminate(x, F("AND(_2 * x <= y, x >= _1)")), F("y >= _2")));
  CHECK(vs_eliminate(x, F("x <> y")).is_true());
  CHECK(vs_eliminate(x, F("AND(x < _0, x > _0)")).is_false());
  CHECK(same(vs_eliminate(x, F("OR(AND(x > a, x < _0), x = b)")), Formula::truth()));
  Formula param = vs_eliminate(x, F("AND(a * x = _1, x > _0)"));
  CHECK(same(param, F("a > _0")));
  CHECK_FALSE(indeterminates_of(param).count(x));
}

TEST_CASE("virtual substitution rejects non-linear occurrences") {
  CHECK_THROWS_AS(vs_eliminate(C("x"), F("x * x > _1")), QeError);
  try {
    vs_eliminate(C("x"), F("x * x * y > _1"));
  } catch (const QeError& e) {
    CHECK(e.symbol() == C("x"));
  }
}

TEST_CASE("block elimination of the water-tank flow systems") {
  for (const char* file : {"water_tank_s1.yaml", "water_tank_s2.yaml"}) {
    Task t = corpus_task(file);
    ReducedProblem rp = reduce_task(t);
    ConstantClassification cls = classify_constants(rp, t.parameters);
    EliminationTrace trace;
    Formula qf = eliminate_block(cls.c, rp.conjunction(), &trace);
    CHECK(trace.steps.size() <= cls.c.size());
    for (const auto& c : cls.c) CHECK_FALSE(indeterminates_of(qf).count(c));
  }
}

TEST_CASE("elimination agrees with the Fourier-Motzkin oracle") {
  CHECK(oracle_mismatches("water_tank_s1.yaml", 1000, 1) == 0);
  CHECK(oracle_mismatches("water_tank_s2.yaml", 1000, 2) == 0);
  CHECK(oracle_mismatches("min_max_rates.yaml", 1000, 3) == 0);
}

TEST_CASE("Fourier-Motzkin models satisfy their systems") {
  std::vector<Atom> rows;
  for (const char* s : {"x - y < _0", "y <= _3", "x + y >= _1", "x <> _1"}) rows.push_back(F(s).atom_value());
  auto m = fm_model(rows);
  REQUIRE(m);
  for (const auto& a : rows) CHECK(evaluate(a, *m));
  rows.push_back(F("x > _5").atom_value());
  CHECK_FALSE(fm_model(rows));
  std::vector<Atom> point{F("x >= _1").atom_value(), F("x <= _1").atom_value(), F("x <> _1").atom_value()};
  CHECK_FALSE(fm_model(point));
}

TEST_CASE("validity with uninterpreted functions") {
  CHECK(is_valid(F("OR(a <> b, f(a) = f(b))")));
  CHECK_FALSE(is_valid(F("OR(a = b, f(a) <> f(b))")));
  CHECK(is_valid(F("OR(x < _0, x >= _0)")));
  CHECK(is_satisfiable(F("AND(f(a) > _1, f(b) < _0)")));
  CHECK_FALSE(is_satisfiable(F("AND(a = b, f(a) > _1, f(b) < _0)")));
}

TEST_CASE("simplification under assumptions") {
  std::vector<Formula> assume{F("la < lo"), F("(FORALL x). out(x) >= _0")};
  CHECK(simplify(F("OR(la - lo >= _0, i - o <= _0)"), assume) == F("i - o <= _0"));
  CHECK(simplify(F("AND(out(c) >= _0, y > _1)"), assume) == F("y > _1"));
  CHECK(simplify_context(F("AND(x <= _1, x <= _2)")) == F("x <= _1"));
  CHECK(simplify_context(F("OR(x <= _1, x <= _2)")) == F("x <= _2"));
  CHECK(simplify(F("AND(d - s >= _0, OR(d >= _0, s <= _0))"), {}) == F("d - s >= _0"));
}
