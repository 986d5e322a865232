#include "symelim/locality.hpp"

#include "symelim/printer.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace symelim {

namespace {

void add_ground_applications(const Formula& f, const std::set<std::string>& symbols, GroundTermSet& out) {
  for (const auto& app : applications_of(f))
    if (app.is_ground() && symbols.count(app.name()))
      out[app.name()].insert(std::vector<Term>(app.args().begin(), app.args().end()));
}

// Tries to bind variables through guards `v = t` (t ground under sigma).
void close_over_guards(const Clause& c, Substitution& sigma) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& g : c.guard) {
      if (!g.is_atom() || g.atom_value().rel != Rel::Eq) continue;
      Polynomial p = g.atom_value().poly.substitute(sigma);
      std::set<Term> vars;
      for (const auto& t : p.atoms()) collect_variables(t, vars);
      if (vars.size() != 1) continue;
      const Term v = *vars.begin();
      std::set<Term> atoms = p.atoms();
      if (!atoms.count(v)) continue;  // only below a function: not a definition
      bool nested = false;
      for (const auto& t : atoms)
        if (!(t == v) && !t.is_ground()) nested = true;
      if (nested || p.degree_in(v) != 1) continue;
      auto [a, b] = p.as_linear_in(v);
      if (!a.is_constant()) continue;
      sigma.emplace(v, Term::from_polynomial(b * (Rational(-1) / a.constant_term())));
      changed = true;
    }
  }
}

}  // namespace

GroundTermSet est_terms(const std::vector<Clause>& K, const std::vector<Formula>& G,
                        const std::set<std::string>& symbols) {
  GroundTermSet out;
  for (const auto& c : K) add_ground_applications(c.matrix(), symbols, out);
  for (const auto& g : G) add_ground_applications(g, symbols, out);
  return out;
}

std::vector<Instance> instantiate(const Clause& c, std::size_t clause_index, const GroundTermSet& T,
                                  const std::set<std::string>& symbols, InstantiationMode mode) {
  const Formula matrix = c.matrix();
  if (c.vars.empty()) return {Instance{clause_index, {}, matrix}};

  std::vector<Term> occurrences;
  std::set<Term> covered;
  for (const auto& app : applications_of(matrix)) {
    if (!symbols.count(app.name()) || app.is_ground()) continue;
    for (const auto& a : app.args()) {
      if (!a.is_variable() && !a.is_ground())
        throw InstantiationError("clause " + std::to_string(clause_index + 1) + " is not flat: argument " +
                                 to_string(a) + " of " + to_string(app));
      if (a.is_variable()) covered.insert(a);
    }
    occurrences.push_back(app);
  }

  std::set<Substitution> seen;
  std::vector<Instance> out;
  auto finish = [&](Substitution sigma) {
    close_over_guards(c, sigma);
    for (const auto& v : c.vars) {
      if (sigma.count(v)) continue;
      if (!covered.count(v))
        throw InstantiationError("variable " + v.name() + " of clause " + std::to_string(clause_index + 1) +
                                 " does not occur below an extension function of the clause's level: " + to_string(c));
      return;
    }
    Substitution restricted;
    for (const auto& v : c.vars) restricted.emplace(v, sigma.at(v));
    if (!seen.insert(restricted).second) return;
    out.push_back(Instance{clause_index, restricted, substitute(matrix, restricted)});
  };

  if (mode == InstantiationMode::StablyLocal) {
    std::set<Term> pool;
    for (const auto& [f, tuples] : T) {
      if (!symbols.count(f)) continue;
      for (const auto& tup : tuples) pool.insert(tup.begin(), tup.end());
    }
    std::vector<Term> candidates(pool.begin(), pool.end());
    std::vector<Term> vars = c.vars;
    std::function<void(std::size_t, Substitution&)> rec = [&](std::size_t k, Substitution& sigma) {
      if (k == vars.size()) {
        finish(sigma);
        return;
      }
      for (const auto& t : candidates) {
        sigma.insert_or_assign(vars[k], t);
        rec(k + 1, sigma);
      }
      sigma.erase(vars[k]);
    };
    Substitution sigma;
    if (!candidates.empty()) rec(0, sigma);
    return out;
  }

  std::function<void(std::size_t, Substitution)> rec = [&](std::size_t k, Substitution sigma) {
    if (k == occurrences.size()) {
      finish(std::move(sigma));
      return;
    }
    const Term& occ = occurrences[k];
    auto it = T.find(occ.name());
    if (it == T.end()) return;
    for (const auto& tuple : it->second) {
      if (tuple.size() != occ.args().size()) continue;
      Substitution next = sigma;
      bool ok = true;
      for (std::size_t a = 0; a < tuple.size() && ok; ++a) {
        const Term& arg = occ.args()[a];
        if (arg.is_variable()) {
          auto [pos, inserted] = next.emplace(arg, tuple[a]);
          ok = inserted || pos->second == tuple[a];
        } else {
          ok = arg == tuple[a];
        }
      }
      if (ok) rec(k + 1, std::move(next));
    }
  };
  rec(0, {});
  return out;
}

Term DefinitionStore::intern(const Term& app, int level, const std::set<std::string>& reserved) {
  if (auto it = by_term_.find(app); it != by_term_.end()) return defs_[it->second].constant;
  std::string name;
  do name = "c_" + app.name() + "_" + std::to_string(++counters_[app.name()]);
  while (reserved.count(name));
  Term c = Term::constant(name);
  by_term_.emplace(app, defs_.size());
  by_constant_.emplace(c, defs_.size());
  defs_.push_back(Definition{c, app, level});
  return c;
}

std::optional<Term> DefinitionStore::constant_for(const Term& app) const {
  auto it = by_term_.find(app);
  if (it == by_term_.end()) return std::nullopt;
  return defs_[it->second].constant;
}

const Definition* DefinitionStore::definition_of(const Term& constant) const {
  auto it = by_constant_.find(constant);
  return it == by_constant_.end() ? nullptr : &defs_[it->second];
}

Substitution DefinitionStore::back_substitution() const {
  Substitution sigma;
  for (const auto& d : defs_) sigma.emplace(d.constant, substitute(d.term, sigma));
  return sigma;
}

Formula DefinitionStore::expand(const Formula& f) const { return substitute(f, back_substitution()); }
Term DefinitionStore::expand(const Term& t) const { return substitute(t, back_substitution()); }

std::set<std::string> ReducedProblem::reserved_names() const {
  std::set<std::string> out;
  for (const auto& [n, s] : signature.constants) out.insert(n);
  for (const auto& [n, d] : signature.functions) out.insert(n);
  for (const auto& d : definitions.definitions()) out.insert(d.constant.name());
  return out;
}

Formula ReducedProblem::purify_formula(const Formula& ground) {
  std::set<Term> app_set = applications_of(ground);
  std::vector<Term> apps(app_set.begin(), app_set.end());
  std::stable_sort(apps.begin(), apps.end(),
                   [](const Term& a, const Term& b) { return application_depth(a) < application_depth(b); });
  std::set<std::string> reserved = reserved_names();
  Substitution sigma;
  for (const auto& app : apps) {
    if (!signature.function(app.name())) continue;
    std::vector<Term> args;
    for (const auto& a : app.args()) args.push_back(substitute(a, sigma));
    Term key = Term::apply(app.name(), std::move(args));
    std::size_t before = definitions.definitions().size();
    Term c = definitions.intern(key, signature.level_of(app.name()), reserved);
    reserved.insert(c.name());
    sigma.emplace(app, c);
    if (definitions.definitions().size() == before) continue;
    const auto& defs = definitions.definitions();
    const Definition& fresh = defs.back();
    for (std::size_t k = 0; k + 1 < defs.size(); ++k) {
      const Definition& old = defs[k];
      if (old.term.name() != fresh.term.name()) continue;
      std::vector<Formula> same_args;
      for (std::size_t a = 0; a < old.term.args().size(); ++a)
        same_args.push_back(Formula::atom(old.term.args()[a], Rel::Eq, fresh.term.args()[a]));
      congruence.push_back(CongruenceAxiom{
          k, defs.size() - 1, implies(Formula::conj(std::move(same_args)), Formula::atom(old.constant, Rel::Eq, fresh.constant))});
    }
  }
  return substitute(ground, sigma);
}

void ReducedProblem::add_goal(const Formula& ground) {
  ground_goal.push_back(ground);
  goal.push_back(purify_formula(ground));
}

Formula ReducedProblem::conjunction() const {
  std::vector<Formula> parts(base_clauses.begin(), base_clauses.end());
  parts.insert(parts.end(), goal.begin(), goal.end());
  for (const auto& c : congruence) parts.push_back(c.formula);
  return Formula::conj(std::move(parts));
}

std::string ReducedProblem::dump() const {
  std::ostringstream os;
  std::set<int, std::greater<int>> levels;
  for (const auto& p : provenance) levels.insert(p.level);
  for (int level : levels) {
    os << "== level " << level << " instances ==\n";
    for (std::size_t k = 0; k < instances.size(); ++k) {
      if (provenance[k].level != level) continue;
      os << "  [clause " << (provenance[k].clause_index ? std::to_string(*provenance[k].clause_index + 1) : "-");
      for (const auto& [v, t] : provenance[k].sigma) os << ", " << v.name() << " := " << to_string(t);
      os << "] " << to_string(instances[k]) << "\n";
    }
  }
  os << "== definitions ==\n";
  for (const auto& d : definitions.definitions())
    os << "  " << d.constant.name() << " = " << to_string(d.term) << "  (level " << d.level << ")\n";
  os << "== K0 ==\n";
  for (const auto& f : base_clauses) os << "  " << to_string(f) << "\n";
  os << "== G0 ==\n";
  for (const auto& f : goal) os << "  " << to_string(f) << "\n";
  os << "== Con0 ==\n";
  for (const auto& c : congruence) os << "  " << to_string(c.formula) << "\n";
  return os.str();
}

ReducedProblem purify(const std::vector<Formula>& instances, const std::vector<Formula>& goal, const Signature& sig) {
  ReducedProblem rp;
  rp.signature = sig;
  rp.instances = instances;
  rp.provenance.resize(instances.size());
  for (const auto& f : instances) rp.base_clauses.push_back(rp.purify_formula(f));
  for (const auto& g : goal) rp.add_goal(g);
  return rp;
}

ReducedProblem reduce_chain(const ProblemSpec& input) {
  ProblemSpec spec = input;
  FlatnessReport flatness = check_flat_linear(spec);
  for (const auto& q : spec.query)
    if (!free_variables(q).empty()) throw InstantiationError("query literal is not ground: " + to_string(q));

  std::vector<Formula> known = spec.query;
  std::vector<Formula> instances;
  std::vector<ProvenanceEntry> provenance;
  std::map<int, std::vector<std::size_t>> by_level;
  for (std::size_t k = 0; k < spec.clauses.size(); ++k) {
    const Clause& c = spec.clauses[k];
    int level = spec.clause_level(c);
    if (c.vars.empty()) {
      instances.push_back(c.matrix());
      provenance.push_back(ProvenanceEntry{level, k, {}});
      known.push_back(c.matrix());
      continue;
    }
    if (level == 0)
      throw InstantiationError("clause " + std::to_string(k + 1) +
                               " has variables but no extension function to instantiate: " + to_string(c));
    by_level[level].push_back(k);
  }

  for (int level = spec.signature.max_level(); level >= 1; --level) {
    auto it = by_level.find(level);
    if (it == by_level.end()) continue;
    std::set<std::string> symbols = spec.signature.symbols_at(level);
    std::vector<Clause> clauses;
    for (std::size_t k : it->second) clauses.push_back(spec.clauses[k]);
    GroundTermSet T = est_terms(clauses, known, symbols);
    InstantiationMode mode =
        spec.stably_local_levels.count(level) ? InstantiationMode::StablyLocal : InstantiationMode::Local;
    for (std::size_t k : it->second) {
      for (auto& inst : instantiate(spec.clauses[k], k, T, symbols, mode)) {
        instances.push_back(inst.formula);
        provenance.push_back(ProvenanceEntry{level, k, inst.sigma});
        known.push_back(inst.formula);
      }
    }
  }

  ReducedProblem rp = purify(instances, spec.query, spec.signature);
  rp.provenance = std::move(provenance);
  rp.flatness = std::move(flatness);
  return rp;
}

}  // namespace symelim
