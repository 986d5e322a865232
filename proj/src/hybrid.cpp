#include "symelim/hybrid.hpp"

#include "symelim/printer.hpp"
#include "symelim/qe.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace symelim {

namespace {

ProblemSpec empty_spec() {
  ProblemSpec spec;
  for (const char* op : {"-", "+", "*"}) spec.signature.base_functions.push_back(FunctionDecl{op, 2, 0, kScalarSort});
  for (const char* rel : {"<", "<=", ">", ">="}) spec.signature.relations.emplace_back(rel, 2);
  return spec;
}

void add_function(ProblemSpec& spec, const std::string& name, int level) {
  spec.signature.functions[name] = FunctionDecl{name, 1, level, kScalarSort};
}

// Declares every constant of the clauses and the query.
void declare_constants(ProblemSpec& spec) {
  std::set<Term> cs;
  for (const auto& c : spec.clauses) {
    auto m = constants_of(c.matrix());
    cs.insert(m.begin(), m.end());
  }
  for (const auto& q : spec.query) {
    auto m = constants_of(q);
    cs.insert(m.begin(), m.end());
  }
  for (const auto& c : cs)
    if (!spec.signature.functions.count(c.name())) spec.signature.constants.emplace(c.name(), kScalarSort);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  if (!used.count(base)) return base;
  for (unsigned k = 1;; ++k) {
    std::string n = base + "_" + std::to_string(k);
    if (!used.count(n)) return n;
  }
}

Term rename_term(const Term& t, const std::map<std::string, std::string>& names, const Substitution& leaves) {
  if (auto it = leaves.find(t); it != leaves.end()) return it->second;
  if (!t.is_apply()) {
    if (t.kind() == TermKind::Arith) return Term::from_polynomial(t.polynomial().substitute(leaves));
    return t;
  }
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(rename_term(a, names, leaves));
  auto it = names.find(t.name());
  return Term::apply(it == names.end() ? t.name() : it->second, std::move(args));
}

// Renames function symbols and replaces leaf terms (constants, variables).
Formula rename(const Formula& f, const std::map<std::string, std::string>& names, const Substitution& leaves = {}) {
  Substitution sigma = leaves;
  for (const auto& app : applications_of(f)) sigma.insert_or_assign(app, rename_term(app, names, leaves));
  return substitute(f, sigma);
}

std::vector<Formula> rename_all(const std::vector<Formula>& fs, const std::map<std::string, std::string>& names,
                                const Substitution& leaves = {}) {
  std::vector<Formula> out;
  for (const auto& f : fs) out.push_back(rename(f, names, leaves));
  return out;
}

void require_convex(const std::vector<Formula>& phi, const std::string& what) {
  for (const auto& f : phi) {
    if (!f.is_atom() || f.atom_value().rel == Rel::Ne)
      throw VcError(what + " must be a conjunction of linear inequalities, found " + to_string(f));
  }
}

Formula negated(const std::vector<Formula>& phi) { return negate(Formula::conj(phi)); }

std::vector<std::string> declared_parameters(const ProblemSpec& spec, const std::vector<std::string>& constants,
                                             const std::vector<std::string>& functions) {
  std::vector<std::string> out;
  for (const auto& c : constants)
    if (spec.signature.constants.count(c) || spec.signature.functions.count(c)) out.push_back(c);
  for (const auto& f : functions)
    if (spec.signature.functions.count(f)) out.push_back(f);
  return out;
}

// Assumptions whose symbols all belong to the problem.
std::vector<Formula> relevant(const std::vector<Formula>& assumptions, const ProblemSpec& spec) {
  std::vector<Formula> out;
  for (const auto& a : assumptions) {
    bool ok = true;
    for (const auto& c : constants_of(a)) ok = ok && spec.signature.constants.count(c.name());
    for (const auto& fn : function_symbols_of(a)) ok = ok && spec.signature.functions.count(fn);
    if (ok) out.push_back(a);
  }
  return out;
}

std::set<std::string> plha_symbols(const Plha& a) {
  std::set<std::string> used(a.parameters.begin(), a.parameters.end());
  used.insert(a.parameter_functions.begin(), a.parameter_functions.end());
  for (const auto& v : a.variables) {
    used.insert(v);
    used.insert(v + "'");
  }
  return used;
}

Substitution state_at(const std::vector<std::string>& variables, const Term& t) {
  Substitution s;
  for (const auto& v : variables) s.emplace(Term::constant(v), Term::apply(v, {t}));
  return s;
}

std::vector<Formula> subst_all(const std::vector<Formula>& fs, const Substitution& s) {
  std::vector<Formula> out;
  for (const auto& f : fs) out.push_back(substitute(f, s));
  return out;
}

void append(std::vector<Formula>& to, const std::vector<Formula>& from) { to.insert(to.end(), from.begin(), from.end()); }

// Splits a formula into conjuncts.
std::vector<Formula> conjuncts(const Formula& f) {
  if (f.is_true()) return {};
  if (f.kind() == FormulaKind::And) return {f.children().begin(), f.children().end()};
  return {f};
}

}  // namespace

const Mode& Plha::mode(const std::string& n) const {
  for (const auto& m : modes)
    if (m.name == n) return m;
  throw VcError("unknown mode '" + n + "'");
}

std::vector<Formula> Family::range(const Term& i) const {
  std::vector<Formula> out;
  if (lower) out.push_back(Formula::atom(*lower, Rel::Le, i.to_polynomial()));
  if (upper) out.push_back(Formula::atom(i.to_polynomial(), Rel::Le, *upper));
  return out;
}

Formula underline_flow(const std::vector<Formula>& flow, const FlowEndpoints& ep, const Term& t0, const Term& t1) {
  Polynomial dt = t1.to_polynomial() - t0.to_polynomial();
  std::vector<Formula> out;
  for (const auto& f : flow) {
    if (f.is_true()) continue;
    if (!f.is_atom()) throw VcError("flow conditions must be conjunctions of linear constraints, found " + to_string(f));
    const Atom& a = f.atom_value();
    if (a.rel == Rel::Lt || a.rel == Rel::Gt || a.rel == Rel::Ne)
      throw VcError("strict inequality in flow condition " + to_string(f) + " (flows must be non-strict)");
    Polynomial p;
    for (const auto& [m, c] : a.poly.terms()) {
      const Term* derivative = nullptr;
      for (const auto& [t, e] : m.factors()) {
        if (ep.state.count(t))
          throw VcError("flow condition " + to_string(f) + " mentions " + to_string(t) +
                        "; flows may only constrain derivatives");
        if (!ep.derivative.count(t)) continue;
        if (derivative || e > 1) throw VcError("flow condition " + to_string(f) + " is not linear in the derivatives");
        derivative = &t;
      }
      Polynomial mono;
      mono.add_term(m, c);
      if (!derivative) {
        p += mono * dt;
        continue;
      }
      const auto& [before, after] = ep.derivative.at(*derivative);
      p += mono.substitute(*derivative, after.to_polynomial() - before.to_polynomial());
    }
    out.push_back(Formula::atom(p, a.rel));
  }
  return Formula::conj(std::move(out));
}

Vc vc_init(const Plha& a, const Mode& q) {
  require_convex(a.safety, "the safety property");
  Vc vc;
  vc.name = a.name + "-init-" + q.name;
  vc.problem = empty_spec();
  append(vc.problem.query, q.init);
  vc.problem.query.push_back(negated(a.safety));
  declare_constants(vc.problem);
  vc.parameters = declared_parameters(vc.problem, a.parameters, a.parameter_functions);
  vc.assumptions = relevant(a.assumptions, vc.problem);
  return vc;
}

Vc vc_flow(const Plha& a, const Mode& q) {
  require_convex(a.safety, "the safety property");
  std::set<std::string> used = plha_symbols(a);
  Term t0 = Term::constant(fresh_name("t0", used));
  Term t1 = Term::constant(fresh_name("t1", used));
  std::string tv = fresh_name("t", used);

  Vc vc;
  vc.name = a.name + "-flow-" + q.name;
  ProblemSpec& spec = vc.problem = empty_spec();
  for (const auto& v : a.variables) add_function(spec, v, 1);
  for (const auto& fn : a.parameter_functions) add_function(spec, fn, 1);
  for (const auto& ax : a.axioms) {
    Clause c;
    c.vars.push_back(Term::variable(tv));
    c.head.push_back(substitute(ax, state_at(a.variables, Term::variable(tv))));
    spec.clauses.push_back(std::move(c));
  }

  Substitution pre = state_at(a.variables, t0), post = state_at(a.variables, t1);
  FlowEndpoints ep;
  for (const auto& v : a.variables) {
    ep.derivative.emplace(Term::constant(v + "'"), std::make_pair(pre.at(Term::constant(v)), post.at(Term::constant(v))));
    ep.state.insert(Term::constant(v));
  }
  auto& query = spec.query;
  query.push_back(Formula::atom(t0, Rel::Lt, t1));
  append(query, subst_all(a.safety, pre));
  append(query, subst_all(q.inv, pre));
  append(query, conjuncts(underline_flow(q.flow, ep, t0, t1)));
  append(query, subst_all(q.inv, post));
  query.push_back(substitute(negated(a.safety), post));
  declare_constants(spec);
  vc.parameters = declared_parameters(spec, a.parameters, a.parameter_functions);
  vc.assumptions = relevant(a.assumptions, spec);
  return vc;
}

Vc vc_jump(const Plha& a, const Edge& e) {
  require_convex(a.safety, "the safety property");
  const Mode& target = a.mode(e.target);
  Vc vc;
  vc.name = a.name + "-jump-" + e.source + "-" + e.target;
  vc.problem = empty_spec();
  for (const auto& fn : a.parameter_functions) add_function(vc.problem, fn, 1);
  Substitution post;
  for (const auto& v : a.variables) post.emplace(Term::constant(v), Term::constant(v + "'"));
  auto& query = vc.problem.query;
  for (const auto& ax : a.axioms) {
    query.push_back(ax);
    query.push_back(substitute(ax, post));
  }
  append(query, a.safety);
  append(query, e.guard);
  append(query, e.jump);
  append(query, subst_all(target.inv, post));
  query.push_back(substitute(negated(a.safety), post));
  declare_constants(vc.problem);
  vc.parameters = declared_parameters(vc.problem, a.parameters, a.parameter_functions);
  vc.assumptions = relevant(a.assumptions, vc.problem);
  return vc;
}

std::vector<Vc> plha_vcs(const Plha& a) {
  std::vector<Vc> out;
  for (const auto& q : a.modes)
    if (!q.init.empty()) out.push_back(vc_init(a, q));
  for (const auto& q : a.modes) out.push_back(vc_flow(a, q));
  for (const auto& e : a.edges) out.push_back(vc_jump(a, e));
  return out;
}

namespace {

struct FamilyNames {
  std::set<std::string> used;
  std::map<std::string, std::string> post;  // state/sensed/link -> name after the step
  Term i, i0, t0, t1;

  explicit FamilyNames(const Family& f) : i(Term::variable(f.index)), i0(Term::constant("i0")), t0(i0), t1(i0) {
    auto add = [&](const std::vector<std::string>& ns) { used.insert(ns.begin(), ns.end()); };
    // Parameters named like the interval endpoints denote them.
    for (const auto& p : f.parameters)
      if (p != "t0" && p != "t1") used.insert(p);
    add(f.parameter_functions);
    add(f.variables);
    add(f.inputs);
    add(f.links);
    for (const auto& s : f.sensed) used.insert(s.name);
    used.insert(f.index);
    for (const auto& n : f.variables) post[n] = take(n + "p");
    for (const auto& s : f.sensed) post[s.name] = take(s.name + "p");
    for (const auto& n : f.links) post[n] = take(n + "p");
    i0 = Term::constant(take(f.index + "0"));
    t0 = Term::constant(take("t0"));
    t1 = Term::constant(take("t1"));
  }

  std::string take(const std::string& base) {
    std::string n = fresh_name(base, used);
    used.insert(n);
    return n;
  }
};

// Clause over the index variable; the head holds one literal.
Clause index_clause(const Term& i, std::vector<Formula> guard, Formula head) {
  Clause c;
  c.vars.push_back(i);
  c.guard = std::move(guard);
  c.head.push_back(std::move(head));
  return c;
}

void check_family(const Family& f) {
  require_convex(f.safety, "the safety property");
  for (const auto& g : f.safety)
    for (const auto& v : free_variables(g))
      if (v.name() != f.index) throw VcError("safety property quantifies over '" + v.name() + "' besides the index");
}

}  // namespace

namespace {

// Gives every application nested inside another application its own
// constant, defined by an extra literal.
std::vector<Formula> name_nested(std::vector<Formula> query, FamilyNames& n) {
  std::map<Term, Term> named;
  std::vector<Formula> defs;
  for (auto& q : query) {
    for (const auto& app : applications_of(q)) {
      for (const auto& arg : app.args()) {
        if (!arg.is_apply()) continue;
        auto it = named.find(arg);
        if (it == named.end()) {
          Term c = Term::constant(n.take("j" + std::to_string(named.size())));
          it = named.emplace(arg, c).first;
          defs.push_back(Formula::atom(c, Rel::Eq, arg));
        }
      }
    }
    // Only arguments are replaced; a top-level occurrence stays as it is.
    Substitution inner;
    for (const auto& app : applications_of(q)) {
      std::vector<Term> args;
      bool changed = false;
      for (const auto& arg : app.args()) {
        auto it = named.find(arg);
        args.push_back(it == named.end() ? arg : it->second);
        changed = changed || it != named.end();
      }
      if (changed) inner.emplace(app, Term::apply(app.name(), std::move(args)));
    }
    q = substitute(q, inner);
  }
  defs.insert(defs.end(), query.begin(), query.end());
  return defs;
}

}  // namespace

Vc sflha_flow_vc(const Family& f) {
  check_family(f);
  FamilyNames n(f);
  Vc vc;
  vc.name = f.name + "-flow";
  ProblemSpec& spec = vc.problem = empty_spec();

  int level = 1;
  for (const auto& l : f.links) add_function(spec, l, 1);
  if (!f.parameter_functions.empty()) {
    for (const auto& p : f.parameter_functions) add_function(spec, p, level);
    ++level;
  }
  for (const auto& v : f.variables) add_function(spec, v, level);
  ++level;
  if (!f.sensed.empty()) {
    for (const auto& s : f.sensed) add_function(spec, s.name, level);
    ++level;
  }
  for (const auto& in : f.inputs) add_function(spec, in, level++);
  for (const auto& v : f.variables) add_function(spec, n.post.at(v), level);
  ++level;
  for (const auto& s : f.sensed) add_function(spec, n.post.at(s.name), level);

  std::map<std::string, std::string> to_post;
  FlowEndpoints ep;
  auto endpoints = [&](const std::string& name) {
    to_post[name] = n.post.at(name);
    Term before = Term::apply(name, {n.i});
    ep.derivative.emplace(Term::apply(name + "'", {n.i}), std::make_pair(before, Term::apply(n.post.at(name), {n.i})));
    ep.state.insert(before);
  };
  for (const auto& v : f.variables) endpoints(v);
  for (const auto& s : f.sensed) endpoints(s.name);

  std::vector<Formula> range = f.range(n.i);
  for (const auto& phi : f.safety) spec.clauses.push_back(index_clause(n.i, range, phi));
  for (const auto& q : f.modes) {
    std::vector<Formula> guard = range;
    append(guard, q.inv);
    std::vector<Formula> heads = q.rates;
    append(heads, conjuncts(underline_flow(q.flow, ep, n.t0, n.t1)));
    if (f.invariants_at_end) append(heads, rename_all(q.inv, to_post));
    for (auto& h : heads) spec.clauses.push_back(index_clause(n.i, guard, h));
  }
  for (const auto& h : conjuncts(underline_flow(f.flow, ep, n.t0, n.t1)))
    spec.clauses.push_back(index_clause(n.i, range, h));
  for (const auto& c : f.link_clauses) spec.clauses.push_back(c);

  auto& query = spec.query;
  query.push_back(Formula::atom(n.t0, Rel::Lt, n.t1));
  Substitution at_i0{{n.i, n.i0}};
  append(query, f.range(n.i0));
  query.push_back(substitute(rename(negated(f.safety), to_post), at_i0));
  query = name_nested(std::move(query), n);
  declare_constants(spec);
  vc.parameters = declared_parameters(spec, f.parameters, f.parameter_functions);
  vc.assumptions = relevant(f.assumptions, spec);
  return vc;
}


std::vector<Vc> sflha_topology_vcs(const Family& f, const TopologyUpdate& u) {
  check_family(f);
  FamilyNames n(f);
  std::set<std::string> links(f.links.begin(), f.links.end());
  for (std::size_t k = 0; k < u.cases.size(); ++k) {
    const UpdateCase& c = u.cases[k];
    auto only_index = [&](const Formula& g) {
      for (const auto& v : free_variables(g))
        if (v.name() != f.index)
          throw VcError("update '" + u.name + "' needs a quantifier alternation over indices ('" + v.name() +
                        "'), which is outside the supported fragment");
    };
    for (const auto& g : c.guard) only_index(g);
    for (const auto& [link, target] : c.assignments) {
      if (!links.count(link)) throw VcError("update '" + u.name + "' assigns '" + link + "', which is not a link");
      only_index(Formula::atom(target, Rel::Eq, target));
    }
  }

  // Sensed values read through the links, or stored measurements.
  Substitution sensed_now;
  std::map<std::string, std::string> to_post;
  for (const auto& l : f.links) to_post[l] = n.post.at(l);
  if (f.sensing == Sensing::Current) {
    for (const auto& s : f.sensed)
      sensed_now.emplace(Term::apply(s.name, {n.i}), Term::apply(s.variable, {Term::apply(s.link, {n.i})}));
  } else {
    for (const auto& s : f.sensed) to_post[s.name] = n.post.at(s.name);
  }

  std::vector<Vc> out;
  for (std::size_t k = 0; k < u.cases.size(); ++k) {
    const UpdateCase& c = u.cases[k];
    Vc vc;
    vc.name = f.name + "-update-" + u.name + (u.cases.size() > 1 ? "-" + std::to_string(k + 1) : "");
    ProblemSpec& spec = vc.problem = empty_spec();
    std::vector<Formula> safety = subst_all(f.safety, sensed_now);
    std::vector<Formula> guard = subst_all(c.guard, sensed_now);

    for (const auto& p : f.parameter_functions) add_function(spec, p, 1);
    for (const auto& l : f.links) add_function(spec, l, 1);
    for (const auto& v : f.variables) add_function(spec, v, 2);
    for (const auto& l : f.links) add_function(spec, n.post.at(l), 2);
    if (f.sensing == Sensing::Measured) {
      for (const auto& s : f.sensed) add_function(spec, s.name, 2);
      for (const auto& s : f.sensed) add_function(spec, n.post.at(s.name), 3);
    }

    std::vector<Formula> range = f.range(n.i);
    for (const auto& phi : safety) spec.clauses.push_back(index_clause(n.i, range, phi));

    Substitution at_i0{{n.i, n.i0}};
    std::vector<Formula> query;
    append(query, f.range(n.i0));
    append(query, subst_all(guard, at_i0));
    std::set<std::string> assigned;
    for (const auto& [link, target] : c.assignments) {
      assigned.insert(link);
      query.push_back(Formula::atom(Term::apply(n.post.at(link), {n.i0}), Rel::Eq, substitute(target, at_i0)));
    }
    Formula bad = substitute(rename(negated(safety), to_post), at_i0);
    std::set<std::string> mentioned = function_symbols_of(bad);
    for (const auto& l : f.links) {
      if (assigned.count(l) || !mentioned.count(n.post.at(l))) continue;
      query.push_back(
          Formula::atom(Term::apply(n.post.at(l), {n.i0}), Rel::Eq, Term::apply(l, {n.i0})));
    }
    if (f.sensing == Sensing::Measured) {
      for (const auto& s : f.sensed) {
        if (!mentioned.count(n.post.at(s.name))) continue;
        Term now = Term::apply(n.post.at(s.name), {n.i0});
        Term value = assigned.count(s.link)
                         ? Term::apply(s.variable, {Term::apply(n.post.at(s.link), {n.i0})})
                         : Term::apply(s.name, {n.i0});
        query.push_back(Formula::atom(now, Rel::Eq, value));
      }
    }
    query.push_back(bad);
    spec.query = name_nested(std::move(query), n);
    declare_constants(spec);
    vc.parameters = declared_parameters(spec, f.parameters, f.parameter_functions);
    vc.assumptions = relevant(f.assumptions, spec);
    out.push_back(std::move(vc));
  }
  return out;
}

std::vector<Vc> sflha_jump_vcs(const Family& f) {
  check_family(f);
  FamilyNames n(f);
  std::map<std::string, std::string> to_post;
  for (const auto& v : f.variables) to_post[v] = n.post.at(v);
  for (const auto& s : f.sensed) to_post[s.name] = n.post.at(s.name);
  std::map<std::string, std::string> primed;
  for (const auto& [from, to] : to_post) primed[from + "'"] = to;

  std::vector<Vc> out;
  for (const auto& e : f.edges) {
    const Mode* target = nullptr;
    for (const auto& m : f.modes)
      if (m.name == e.target) target = &m;
    if (!target) throw VcError("edge to unknown mode '" + e.target + "'");
    Vc vc;
    vc.name = f.name + "-jump-" + e.source + "-" + e.target;
    ProblemSpec& spec = vc.problem = empty_spec();
    Substitution at_i0{{n.i, n.i0}};
    std::vector<Formula> query = f.range(n.i0);
    append(query, subst_all(f.safety, at_i0));
    append(query, subst_all(e.guard, at_i0));
    append(query, subst_all(rename_all(e.jump, primed), at_i0));
    append(query, subst_all(rename_all(target->inv, to_post), at_i0));
    query.push_back(substitute(rename(negated(f.safety), to_post), at_i0));
    spec.query = std::move(query);
    for (const auto& q : spec.query)
      for (const auto& fn : function_symbols_of(q)) add_function(spec, fn, 1);
    declare_constants(spec);
    vc.parameters = declared_parameters(spec, f.parameters, f.parameter_functions);
    vc.assumptions = relevant(f.assumptions, spec);
    out.push_back(std::move(vc));
  }
  return out;
}

std::vector<Vc> family_vcs(const Family& f) {
  std::vector<Vc> out;
  if (!f.modes.empty() || !f.flow.empty()) out.push_back(sflha_flow_vc(f));
  for (auto& vc : sflha_jump_vcs(f)) out.push_back(std::move(vc));
  for (const auto& u : f.updates)
    for (auto& vc : sflha_topology_vcs(f, u)) out.push_back(std::move(vc));
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> overlapping_cases(const Family& f, const TopologyUpdate& u) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  Term i = Term::variable(f.index);
  Substitution ground{{i, Term::constant(f.index + "#")}};
  for (std::size_t a = 0; a < u.cases.size(); ++a)
    for (std::size_t b = a + 1; b < u.cases.size(); ++b) {
      std::vector<Formula> both = f.range(i);
      append(both, u.cases[a].guard);
      append(both, u.cases[b].guard);
      if (!is_valid(negate(substitute(Formula::conj(both), ground)))) out.emplace_back(a, b);
    }
  return out;
}

Task to_task(const Vc& vc, bool strong_simplification) {
  Task t;
  t.name = vc.name;
  t.mode = TaskMode::GenerateConstraints;
  t.parameters = vc.parameters;
  t.assumptions = vc.assumptions;
  for (const auto& a : vc.assumptions) t.assumption_text.push_back(to_string(a));
  t.slfq_query = strong_simplification;
  t.specification_type = "HPILOT";
  t.specification_theory = "REAL_CLOSED_FIELDS";
  t.problem = vc.problem;
  return t;
}

std::string print_task_file(const std::vector<Vc>& vcs, const std::string& header_comment) {
  std::ostringstream os;
  if (!header_comment.empty()) os << "# " << header_comment << "\n";
  os << "tasks:\n";
  for (const auto& vc : vcs) {
    os << "  " << vc.name << ":\n";
    os << "    mode: GENERATE_CONSTRAINTS\n";
    os << "    options:\n";
    os << "      parameter: [";
    for (std::size_t k = 0; k < vc.parameters.size(); ++k) os << (k ? ", " : "") << vc.parameters[k];
    os << "]\n";
    if (!vc.assumptions.empty()) {
      os << "      assumptions: [";
      for (std::size_t k = 0; k < vc.assumptions.size(); ++k)
        os << (k ? ", " : "") << '"' << to_string(vc.assumptions[k]) << '"';
      os << "]\n";
    }
    os << "      slfq_query: true\n";
    os << "    specification_type: HPILOT\n";
    os << "    specification_theory: REAL_CLOSED_FIELDS\n";
    os << "    specification:\n";
    os << "      file: |\n";
    std::istringstream lines(print_problem(vc.problem));
    for (std::string line; std::getline(lines, line);) os << "        " << line << "\n";
  }
  return os.str();
}

}  // namespace symelim
