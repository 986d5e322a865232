#include "symelim/qe.hpp"

#include <algorithm>
#include <map>

namespace symelim {

namespace {

// Subset of the reals, described by sorted breakpoints and the membership of
// the 2n+1 regions they induce: region 2i is the open interval left of
// points[i], region 2i+1 is points[i], region 2n lies right of the last point.
class RealSet {
 public:
  static RealSet relation(const Rational& t, Rel r) {
    RealSet s;
    s.points_ = {t};
    s.in_ = {holds(r, -1), holds(r, 0), holds(r, 1)};
    return s;
  }
  static RealSet all(bool value) {
    RealSet s;
    s.in_ = {value};
    return s;
  }

  bool contains(const Rational& v) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), v);
    std::size_t i = static_cast<std::size_t>(it - points_.begin());
    if (it != points_.end() && *it == v) return in_[2 * i + 1];
    return in_[2 * i];
  }

  template <class Op>
  static RealSet combine(const RealSet& a, const RealSet& b, Op op) {
    RealSet out;
    std::set_union(a.points_.begin(), a.points_.end(), b.points_.begin(), b.points_.end(),
                   std::back_inserter(out.points_));
    const auto& p = out.points_;
    std::size_t n = p.size();
    out.in_.resize(2 * n + 1);
    for (std::size_t r = 0; r <= 2 * n; ++r) {
      Rational sample = sample_of(p, r);
      out.in_[r] = op(a.contains(sample), b.contains(sample));
    }
    out.canonicalize();
    return out;
  }

  RealSet complement() const {
    RealSet out = *this;
    out.in_.flip();
    return out;
  }
  bool empty() const { return std::none_of(in_.begin(), in_.end(), [](bool b) { return b; }); }
  bool full() const { return std::all_of(in_.begin(), in_.end(), [](bool b) { return b; }); }
  bool subset_of(const RealSet& o) const {
    return combine(*this, o, [](bool x, bool y) { return !x || y; }).full();
  }

  // Formula stating that `form` lies in this set.
  Formula to_formula(const Polynomial& form) const {
    if (full()) return Formula::truth();
    if (empty()) return Formula::falsity();
    std::size_t n = points_.size();
    auto cmp = [&](Rel r, const Rational& v) { return Formula::atom(form, r, Polynomial::constant(v)); };
    bool only_points_missing = true;
    for (std::size_t r = 0; r <= 2 * n; r += 2) only_points_missing = only_points_missing && in_[r];
    if (only_points_missing) {
      std::vector<Formula> parts;
      for (std::size_t i = 0; i < n; ++i)
        if (!in_[2 * i + 1]) parts.push_back(cmp(Rel::Ne, points_[i]));
      return Formula::conj(std::move(parts));
    }
    std::vector<Formula> runs;
    std::size_t r = 0;
    while (r <= 2 * n) {
      if (!in_[r]) {
        ++r;
        continue;
      }
      std::size_t e = r;
      while (e + 1 <= 2 * n && in_[e + 1]) ++e;
      if (r == e && r % 2 == 1) {
        runs.push_back(cmp(Rel::Eq, points_[r / 2]));
      } else {
        std::vector<Formula> bounds;
        if (r > 0) bounds.push_back(r % 2 == 1 ? cmp(Rel::Ge, points_[r / 2]) : cmp(Rel::Gt, points_[r / 2 - 1]));
        if (e < 2 * n) bounds.push_back(e % 2 == 1 ? cmp(Rel::Le, points_[e / 2]) : cmp(Rel::Lt, points_[e / 2]));
        runs.push_back(Formula::conj(std::move(bounds)));
      }
      r = e + 1;
    }
    return Formula::disj(std::move(runs));
  }

 private:
  static Rational sample_of(const std::vector<Rational>& p, std::size_t r) {
    std::size_t n = p.size();
    if (n == 0) return 0;
    if (r % 2 == 1) return p[r / 2];
    if (r == 0) return p.front() - 1;
    if (r == 2 * n) return p.back() + 1;
    return (p[r / 2 - 1] + p[r / 2]) / 2;
  }

  // Removes breakpoints whose point and both neighbouring intervals agree.
  void canonicalize() {
    std::vector<Rational> pts;
    std::vector<bool> in{in_[0]};
    for (std::size_t i = 0; i < points_.size(); ++i) {
      bool left = in.back(), at = in_[2 * i + 1], right = in_[2 * i + 2];
      if (left == at && at == right) continue;
      pts.push_back(points_[i]);
      in.push_back(at);
      in.push_back(right);
    }
    points_ = std::move(pts);
    in_ = std::move(in);
  }

  std::vector<Rational> points_;
  std::vector<bool> in_;
};

RealSet meet(const RealSet& a, const RealSet& b) {
  return RealSet::combine(a, b, [](bool x, bool y) { return x && y; });
}
RealSet join(const RealSet& a, const RealSet& b) {
  return RealSet::combine(a, b, [](bool x, bool y) { return x || y; });
}

struct PolyLess {
  bool operator()(const Polynomial& a, const Polynomial& b) const { return compare(a, b) < 0; }
};

// Linear form (non-constant part, made primitive) and the set of its values
// satisfying the atom.
std::pair<Polynomial, RealSet> decompose(const Atom& a) {
  Rational k = a.poly.constant_term();
  Polynomial form = a.poly - Polynomial::constant(k);
  auto [g, prim] = form.primitive();
  if (prim.leading_coefficient() < 0) {
    prim = -prim;
    g = -g;
  }
  // g*prim + k rel 0  <=>  prim rel' -k/g
  Rel r = g > 0 ? a.rel : mirror(a.rel);
  return {prim, RealSet::relation(Rational(-k / g), r)};
}

using Context = std::map<Polynomial, RealSet, PolyLess>;

Formula simp(const Formula& f, const Context& ctx);

Formula tighter(const Polynomial& form, const RealSet& own, const RealSet* outer) {
  Formula plain = own.to_formula(form);
  if (!outer) return plain;
  Formula restricted = meet(own, *outer).to_formula(form);
  return count_atoms(restricted) < count_atoms(plain) ? restricted : plain;
}

Formula simp_junction(const Formula& f, const Context& ctx, bool is_and) {
  std::map<Polynomial, RealSet, PolyLess> groups;
  std::vector<Formula> others;
  for (const auto& c : f.children()) {
    if (!c.is_atom()) {
      others.push_back(c);
      continue;
    }
    auto [form, set] = decompose(c.atom_value());
    auto it = groups.find(form);
    if (it == groups.end()) groups.emplace(form, set);
    else it->second = is_and ? meet(it->second, set) : join(it->second, set);
  }

  Context inner = ctx;
  std::vector<Formula> parts;
  for (const auto& [form, set] : groups) {
    auto known = ctx.find(form);
    const RealSet* outer = known == ctx.end() ? nullptr : &known->second;
    if (is_and) {
      RealSet both = outer ? meet(*outer, set) : set;
      if (both.empty()) return Formula::falsity();
      inner.insert_or_assign(form, both);
      if (outer && outer->subset_of(set)) continue;
      parts.push_back(tighter(form, set, outer));
    } else {
      if (outer && outer->subset_of(set)) return Formula::truth();
      if (outer && meet(*outer, set).empty()) continue;
      RealSet rest = meet(outer ? *outer : RealSet::all(true), set.complement());
      if (rest.empty()) return Formula::truth();
      inner.insert_or_assign(form, rest);
      parts.push_back(tighter(form, set, outer));
    }
  }
  for (const auto& o : others) {
    Formula s = simp(o, inner);
    if (is_and && s.is_false()) return s;
    if (!is_and && s.is_true()) return s;
    parts.push_back(s);
  }
  return is_and ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
}

Formula simp(const Formula& f, const Context& ctx) {
  switch (f.kind()) {
    case FormulaKind::False:
    case FormulaKind::True:
      return f;
    case FormulaKind::Atom: {
      auto [form, set] = decompose(f.atom_value());
      auto it = ctx.find(form);
      if (it == ctx.end()) return f;
      if (it->second.subset_of(set)) return Formula::truth();
      if (meet(it->second, set).empty()) return Formula::falsity();
      return tighter(form, set, &it->second);
    }
    case FormulaKind::And:
      return simp_junction(f, ctx, true);
    case FormulaKind::Or:
      return simp_junction(f, ctx, false);
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      std::vector<Term> vars(f.bound().begin(), f.bound().end());
      Formula body = simp(f.body(), Context{});
      return f.kind() == FormulaKind::Forall ? Formula::forall(vars, body) : Formula::exists(vars, body);
    }
  }
  return f;
}

Formula simp_fixpoint(const Formula& f, const Context& ctx) {
  Formula cur = f;
  for (int round = 0; round < 8; ++round) {
    Formula next = simp(cur, ctx);
    if (next == cur) break;
    cur = next;
  }
  return cur;
}

Context context_of(const std::vector<Formula>& facts) {
  Context ctx;
  for (const auto& fact : facts) {
    std::vector<Formula> parts;
    if (fact.kind() == FormulaKind::And) parts.assign(fact.children().begin(), fact.children().end());
    else parts.push_back(fact);
    for (const auto& p : parts) {
      if (!p.is_atom()) continue;
      auto [form, set] = decompose(p.atom_value());
      auto it = ctx.find(form);
      if (it == ctx.end()) ctx.emplace(form, set);
      else it->second = meet(it->second, set);
    }
  }
  return ctx;
}

// One-way matching of `pattern` against `target` binding only `vars`.
bool match(const Term& pattern, const Term& target, const std::set<Term>& vars, Substitution& sigma) {
  if (pattern.is_variable() && vars.count(pattern)) {
    auto it = sigma.find(pattern);
    if (it != sigma.end()) return it->second == target;
    sigma.emplace(pattern, target);
    return true;
  }
  if (pattern.is_apply()) {
    if (!target.is_apply() || pattern.name() != target.name() || pattern.args().size() != target.args().size())
      return false;
    for (std::size_t k = 0; k < pattern.args().size(); ++k)
      if (!match(pattern.args()[k], target.args()[k], vars, sigma)) return false;
    return true;
  }
  return pattern == target;
}

Formula replace_atom(const Formula& f, const Atom& target, bool value) {
  return map_atoms(f, [&](const Atom& a) { return a == target ? Formula::boolean(value) : atom_formula(a); });
}

}  // namespace

constexpr std::size_t kAbsorptionAtomLimit = 60;

// Drops conjuncts implied by their siblings and disjuncts implying theirs,
// everything read under the hypothesis `hyp`.
Formula absorb(const Formula& f, const Formula& hyp) {
  bool is_and = f.kind() == FormulaKind::And;
  if (!is_and && f.kind() != FormulaKind::Or) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(absorb(c, hyp));
  for (std::size_t k = 0; k < kids.size() && kids.size() > 1;) {
    std::vector<Formula> others = kids;
    others.erase(others.begin() + static_cast<std::ptrdiff_t>(k));
    bool redundant = is_and ? is_valid(implies(Formula::conj({hyp, Formula::conj(others)}), kids[k]))
                            : is_valid(implies(Formula::conj({hyp, kids[k]}), Formula::disj(others)));
    if (redundant) kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(k));
    else ++k;
  }
  return is_and ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
}

Formula simplify_context(const Formula& phi) { return simp_fixpoint(phi, Context{}); }

std::vector<Formula> instantiate_assumptions(const std::vector<Formula>& assumptions, const Formula& target) {
  std::vector<Formula> out;
  std::set<Term> targets = applications_of(target);
  for (const auto& a : assumptions) {
    if (a.kind() != FormulaKind::Forall) {
      if (is_quantifier_free(a)) out.push_back(a);
      continue;
    }
    if (!is_quantifier_free(a.body())) continue;
    std::set<Term> vars(a.bound().begin(), a.bound().end());
    // Candidate values per variable, gathered from every pattern match.
    std::map<Term, std::set<Term>> values;
    for (const auto& pattern : applications_of(a.body())) {
      for (const auto& t : targets) {
        Substitution sigma;
        if (!match(pattern, t, vars, sigma)) continue;
        for (const auto& [v, val] : sigma) values[v].insert(val);
      }
    }
    if (values.size() != vars.size()) continue;
    std::vector<Substitution> combos{Substitution{}};
    for (const auto& [v, vals] : values) {
      std::vector<Substitution> next;
      for (const auto& partial : combos)
        for (const auto& val : vals) {
          Substitution s = partial;
          s.emplace(v, val);
          next.push_back(std::move(s));
        }
      combos = std::move(next);
      if (combos.size() > 10000) break;
    }
    for (const auto& s : combos) out.push_back(substitute(a.body(), s));
  }
  return out;
}

Formula simplify(const Formula& phi, const std::vector<Formula>& assumptions, const SimplifyOptions& options) {
  if (phi.kind() == FormulaKind::Forall || phi.kind() == FormulaKind::Exists) {
    std::vector<Term> vars(phi.bound().begin(), phi.bound().end());
    Formula body = simplify(phi.body(), assumptions, options);
    return phi.kind() == FormulaKind::Forall ? Formula::forall(vars, body) : Formula::exists(vars, body);
  }
  std::vector<Formula> facts = instantiate_assumptions(assumptions, phi);
  Context ctx = context_of(facts);
  Formula hyp = Formula::conj(facts);
  Formula cur = simp_fixpoint(phi, ctx);
  if (options.depth_cap < 1 || !options.entailment_pruning || cur.is_true() || cur.is_false()) return cur;

  if (!hyp.is_true()) {
    std::vector<Atom> atoms = atoms_of(cur);
    for (const auto& a : atoms) {
      Formula af = atom_formula(a);
      if (is_valid(implies(hyp, af))) cur = replace_atom(cur, a, true);
      else if (is_valid(implies(hyp, negate(af)))) cur = replace_atom(cur, a, false);
    }
    cur = simp_fixpoint(cur, ctx);
  }
  if (count_atoms(cur) <= kAbsorptionAtomLimit) cur = simp_fixpoint(absorb(cur, hyp), ctx);

  if (options.strong) {
    bool changed = true;
    while (changed && !cur.is_true() && !cur.is_false()) {
      changed = false;
      for (const auto& a : atoms_of(cur)) {
        for (bool value : {false, true}) {
          Formula candidate = simp_fixpoint(replace_atom(cur, a, value), ctx);
          if (count_atoms(candidate) >= count_atoms(cur)) continue;
          if (is_valid(implies(hyp, iff(cur, candidate)))) {
            cur = candidate;
            changed = true;
            break;
          }
        }
        if (changed) break;
      }
    }
  }
  return cur;
}

}  // namespace symelim
