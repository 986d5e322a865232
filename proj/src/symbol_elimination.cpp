#include "symelim/symbol_elimination.hpp"

#include "symelim/printer.hpp"

#include <chrono>
#include <set>

namespace symelim {

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double lap() {
    auto now = std::chrono::steady_clock::now();
    double s = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::vector<Formula> ground_material(const ReducedProblem& rp) {
  std::vector<Formula> out = rp.instances;
  out.insert(out.end(), rp.ground_goal.begin(), rp.ground_goal.end());
  return out;
}

}  // namespace

double Statistics::total() const {
  double s = 0;
  for (const auto& st : steps) s += st.seconds;
  return s;
}

ConstantClassification classify_constants(const ReducedProblem& rp, const std::vector<std::string>& parameters) {
  std::set<std::string> params(parameters.begin(), parameters.end());
  std::set<Term> all = indeterminates_of(rp.conjunction());
  std::set<Term> cf, cp;
  for (const auto& t : all) {
    if (!t.is_constant()) continue;
    if (params.count(t.name())) {
      cf.insert(t);
      continue;
    }
    const Definition* d = rp.definitions.definition_of(t);
    if (!d || !params.count(d->term.name())) continue;
    cf.insert(t);
    for (const auto& arg : d->term.args()) {
      std::set<Term> inner;
      collect_constants(arg, inner);
      for (const auto& a : inner) {
        if (params.count(a.name())) continue;
        const Definition* ad = rp.definitions.definition_of(a);
        if (ad && !params.count(ad->term.name()))
          throw ClassificationError("parameter " + d->term.name() + " is applied to " + to_string(ad->term) +
                                    ", which is not a parameter term and cannot be kept");
        if (!ad) cp.insert(a);
      }
    }
  }
  ConstantClassification out;
  out.cf.assign(cf.begin(), cf.end());
  out.cp.assign(cp.begin(), cp.end());
  for (const auto& t : all)
    if (t.is_constant() && !cf.count(t) && !cp.count(t)) out.c.push_back(t);
  return out;
}

ReducedProblem reduce_task(const Task& task) {
  ReducedProblem rp = reduce_chain(task.problem);
  if (task.assumptions_in_elimination && !task.assumptions.empty()) {
    Formula material = Formula::conj(ground_material(rp));
    for (const auto& inst : instantiate_assumptions(task.assumptions, material)) {
      if (!free_variables(inst).empty()) continue;
      rp.add_goal(inst);
    }
  }
  return rp;
}

ConstraintResult generate_constraint(const Task& task) {
  ConstraintResult r;
  r.task = task.name;
  Stopwatch clock;

  ReducedProblem rp = reduce_task(task);
  r.stats.instances = rp.instances.size();
  r.stats.definitions = rp.definitions.definitions().size();
  r.stats.congruence = rp.congruence.size();
  r.stats.steps.push_back({"reduction", clock.lap()});

  r.classification = classify_constants(rp, task.parameters);
  r.stats.eliminated = r.classification.c.size();
  r.stats.steps.push_back({"classification", clock.lap()});

  r.eliminated = eliminate_block(r.classification.c, rp.conjunction());
  r.stats.steps.push_back({"elimination", clock.lap()});

  // Parameter terms come back from their definitions; their arguments
  // become universally quantified variables.
  Formula restored = rp.definitions.expand(r.eliminated);
  Substitution generalize;
  for (const auto& c : r.classification.cp) {
    Term v = Term::variable(c.name());
    generalize.emplace(c, v);
    r.universal.push_back(v);
  }
  restored = substitute(restored, generalize);
  r.stats.steps.push_back({"back-substitution", clock.lap()});

  Formula negated = negate(restored);
  r.unsimplified = Formula::forall(r.universal, negated);
  r.stats.atoms_before = count_atoms(negated);
  SimplifyOptions opts;
  opts.strong = task.slfq_query;
  Formula simplified = simplify(negated, task.assumptions, opts);
  r.formula = Formula::forall(r.universal, simplified);
  r.stats.atoms_after = count_atoms(simplified);
  r.stats.steps.push_back({"simplification", clock.lap()});
  return r;
}

SatResult check_sat(const ReducedProblem& rp) {
  SatResult r;
  Stopwatch clock;
  r.stats.instances = rp.instances.size();
  r.stats.definitions = rp.definitions.definitions().size();
  r.stats.congruence = rp.congruence.size();
  Formula all = rp.conjunction();
  auto model = find_model(all);
  r.stats.steps.push_back({"elimination", clock.lap()});
  r.stats.atoms_before = r.stats.atoms_after = count_atoms(all);
  if (!model) return r;
  r.verdict = SatVerdict::Sat;
  r.model = *model;
  r.extended = *model;
  for (const auto& [c, term] : rp.definitions.back_substitution()) {
    auto it = model->find(c);
    if (it == model->end()) continue;
    r.extended[term] = it->second;
  }
  for (const auto& f : ground_material(rp)) {
    for (const auto& t : indeterminates_of(f)) r.extended.emplace(t, 0);
    if (!evaluate(f, r.extended))
      throw std::logic_error("witness violates " + to_string(f));
  }
  r.stats.steps.push_back({"witness", clock.lap()});
  return r;
}

SatResult check_sat(const Task& task) {
  Stopwatch clock;
  ReducedProblem rp = reduce_task(task);
  double reduction = clock.lap();
  SatResult r = check_sat(rp);
  r.stats.steps.insert(r.stats.steps.begin(), StepTiming{"reduction", reduction});
  return r;
}

bool constraint_refutes_goal(const Task& task, const ConstraintResult& result) {
  ReducedProblem rp = reduce_task(task);
  Formula material = Formula::conj(ground_material(rp));
  std::vector<Formula> instances;
  if (result.universal.empty()) {
    instances.push_back(result.formula);
  } else {
    instances = instantiate_assumptions({result.formula}, material);
    // Also instantiate over the generalized constants themselves.
    Substitution back;
    for (const auto& v : result.universal) back.emplace(v, Term::constant(v.name()));
    const Formula& body = result.formula.kind() == FormulaKind::Forall ? result.formula.body() : result.formula;
    instances.push_back(substitute(body, back));
  }
  for (const auto& inst : instances)
    if (free_variables(inst).empty()) rp.add_goal(inst);
  return check_sat(rp).verdict == SatVerdict::Unsat;
}

}  // namespace symelim
