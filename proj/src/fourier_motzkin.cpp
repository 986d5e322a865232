#include "symelim/qe.hpp"

#include <algorithm>
#include <stdexcept>

namespace symelim {

namespace {

// p rel 0 with rel one of Eq, Le, Lt.
struct Row {
  Polynomial p;
  Rel rel;
};

struct Bound {
  Polynomial value;
  bool strict;
};

struct Step {
  explicit Step(Term symbol) : x(std::move(symbol)) {}
  Term x;
  bool solved = false;  // x = value
  Polynomial value;
  std::vector<Bound> lower, upper;
};

void require_linear(const Polynomial& p) {
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() > 1) throw QeError(m.factors().front().first, "occurs in a non-linear product");
  }
}

std::set<Term> symbols_of(const std::vector<Row>& rows) {
  std::set<Term> out;
  for (const auto& r : rows)
    for (const auto& a : r.p.atoms()) out.insert(a);
  return out;
}

Rational value_of(const Polynomial& p, Valuation& model) {
  for (const auto& a : p.atoms()) model.emplace(a, 0);
  return p.evaluate(model);
}

// Drops constant rows; false if one of them is violated.
bool prune_constant_rows(std::vector<Row>& rows) {
  std::vector<Row> kept;
  for (auto& r : rows) {
    if (r.p.is_constant()) {
      int s = sgn(r.p.constant_term());
      if (!holds(r.rel, s)) return false;
      continue;
    }
    kept.push_back(std::move(r));
  }
  rows = std::move(kept);
  return true;
}

std::optional<Valuation> solve(std::vector<Row> rows) {
  std::vector<Step> steps;
  for (;;) {
    if (!prune_constant_rows(rows)) return std::nullopt;
    if (rows.empty()) break;

    auto eq = std::find_if(rows.begin(), rows.end(), [](const Row& r) { return r.rel == Rel::Eq; });
    if (eq != rows.end()) {
      // Gauss step on the first symbol of the equation.
      Term x = *eq->p.atoms().begin();
      auto [a, b] = eq->p.as_linear_in(x);
      Polynomial value = b * Rational(-1 / a.constant_term());
      rows.erase(eq);
      for (auto& r : rows) r.p = r.p.substitute(x, value);
      Step s(x);
      s.solved = true;
      s.value = value;
      steps.push_back(std::move(s));
      continue;
    }

    // Choose the symbol with the fewest generated combinations.
    std::set<Term> syms = symbols_of(rows);
    Term best = *syms.begin();
    std::size_t best_cost = SIZE_MAX;
    for (const auto& x : syms) {
      std::size_t lo = 0, hi = 0;
      for (const auto& r : rows) {
        auto [a, b] = r.p.as_linear_in(x);
        if (a.is_zero()) continue;
        (sgn(a.constant_term()) > 0 ? hi : lo)++;
      }
      std::size_t cost = lo * hi;
      if (cost < best_cost) {
        best_cost = cost;
        best = x;
      }
    }

    Step s(best);
    std::vector<Row> lower, upper, rest;
    for (auto& r : rows) {
      auto [a, b] = r.p.as_linear_in(best);
      if (a.is_zero()) {
        rest.push_back(std::move(r));
        continue;
      }
      Rational ca = a.constant_term();
      Bound bd{b * Rational(-1 / ca), r.rel == Rel::Lt};
      if (ca > 0) {
        s.upper.push_back(bd);
        upper.push_back(Row{r.p * Rational(1 / ca), r.rel});
      } else {
        s.lower.push_back(bd);
        lower.push_back(Row{r.p * Rational(-1 / ca), r.rel});
      }
    }
    // x + u rel 0 (upper) and -x + l rel 0 (lower) combine to u + l rel 0.
    for (const auto& u : upper)
      for (const auto& l : lower) {
        Rel rel = (u.rel == Rel::Lt || l.rel == Rel::Lt) ? Rel::Lt : Rel::Le;
        rest.push_back(Row{u.p + l.p, rel});
      }
    rows = std::move(rest);
    steps.push_back(std::move(s));
  }

  Valuation model;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    const Step& s = *it;
    if (s.solved) {
      model[s.x] = value_of(s.value, model);
      continue;
    }
    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& b : s.lower) {
      Rational v = value_of(b.value, model);
      if (!lo || v > *lo || (v == *lo && b.strict)) {
        lo = v;
        lo_strict = b.strict;
      }
    }
    for (const auto& b : s.upper) {
      Rational v = value_of(b.value, model);
      if (!hi || v < *hi || (v == *hi && b.strict)) {
        hi = v;
        hi_strict = b.strict;
      }
    }
    Rational x;
    if (lo && hi) {
      x = (*lo == *hi) ? *lo : Rational((*lo + *hi) / 2);
    } else if (lo) {
      x = lo_strict ? Rational(*lo + 1) : *lo;
    } else if (hi) {
      x = hi_strict ? Rational(*hi - 1) : *hi;
    } else {
      x = 0;
    }
    model[s.x] = x;
  }
  return model;
}

Row as_row(const Atom& a) {
  switch (a.rel) {
    case Rel::Ge:
      return Row{-a.poly, Rel::Le};
    case Rel::Gt:
      return Row{-a.poly, Rel::Lt};
    default:
      return Row{a.poly, a.rel};
  }
}

bool satisfies(const Polynomial& p, Valuation& model) { return sgn(value_of(p, model)) != 0; }

// A convex set avoids finitely many hyperplanes iff it avoids each of them,
// so every disequation is handled separately and the witnesses are merged
// along segments (each hyperplane blocks at most one point of a segment).
std::optional<Valuation> solve_with_disequations(const std::vector<Atom>& atoms) {
  std::vector<Row> base;
  std::vector<Polynomial> ne;
  for (const auto& a : atoms) {
    if (a.rel == Rel::Ne) ne.push_back(a.poly);
    else base.push_back(as_row(a));
  }
  auto model = solve(base);
  if (!model) return std::nullopt;
  for (std::size_t i = 0; i < ne.size(); ++i) {
    if (satisfies(ne[i], *model)) continue;
    std::optional<Valuation> away;
    for (const auto& side : {ne[i], Polynomial(-ne[i])}) {
      std::vector<Row> rows = base;
      rows.push_back(Row{side, Rel::Lt});
      if ((away = solve(rows))) break;
    }
    if (!away) return std::nullopt;
    for (const auto& [k, v] : *model) away->emplace(k, 0);
    for (const auto& [k, v] : *away) model->emplace(k, 0);
    bool merged = false;
    for (unsigned d = 1; d <= ne.size() + 2 && !merged; ++d) {
      Rational t(1, d);
      Valuation y;
      for (const auto& [k, v] : *model) y[k] = (1 - t) * v + t * away->at(k);
      merged = true;
      for (std::size_t j = 0; j <= i && merged; ++j) merged = satisfies(ne[j], y);
      if (merged) *model = std::move(y);
    }
    if (!merged) throw std::logic_error("disequation merge failed");
  }
  return model;
}

}  // namespace

std::optional<Valuation> fm_model(const std::vector<Atom>& conjunction) {
  std::set<Term> all;
  for (const auto& a : conjunction) {
    require_linear(a.poly);
    for (const auto& t : a.poly.atoms()) all.insert(t);
  }
  auto model = solve_with_disequations(conjunction);
  if (!model) return std::nullopt;
  for (const auto& t : all) model->emplace(t, 0);
  for (auto it = model->begin(); it != model->end();) {
    if (all.count(it->first)) ++it;
    else it = model->erase(it);
  }
  for (const auto& a : conjunction)
    if (!evaluate(a, *model)) throw std::logic_error("Fourier-Motzkin back-substitution produced a non-model");
  return model;
}

bool numeric_fm_sat(const std::vector<Atom>& conjunction, const Valuation& valuation) {
  std::vector<Atom> rows;
  rows.reserve(conjunction.size());
  for (const auto& a : conjunction) {
    Polynomial p = a.poly.partial_evaluate(valuation);
    if (p.is_constant()) {
      if (!holds(a.rel, sgn(p.constant_term()))) return false;
      continue;
    }
    rows.push_back(Atom{std::move(p), a.rel});
  }
  return fm_model(rows).has_value();
}

}  // namespace symelim
