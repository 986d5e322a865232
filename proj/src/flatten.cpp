#include "symelim/flatten.hpp"

#include "symelim/printer.hpp"

#include <map>

namespace symelim {

namespace {

std::vector<Term> extension_applications(const Clause& c, const Signature& sig) {
  std::vector<Term> out;
  for (const auto& t : applications_of(c.matrix()))
    if (sig.function(t.name())) out.push_back(t);
  return out;
}

}  // namespace

bool is_flat(const Clause& c, const Signature& sig) {
  if (c.vars.empty()) return true;
  for (const auto& app : extension_applications(c, sig))
    for (const auto& a : app.args())
      if (!a.is_variable()) return false;
  return true;
}

bool is_linear(const Clause& c, const Signature& sig) {
  std::map<Term, Term> owner;
  for (const auto& app : extension_applications(c, sig)) {
    for (const auto& a : app.args()) {
      if (!a.is_variable()) continue;
      auto [it, inserted] = owner.emplace(a, app);
      if (!inserted && !(it->second == app)) return false;
    }
  }
  return true;
}

Clause flatten_clause(const Clause& c, const Signature& sig) {
  if (c.vars.empty() || is_flat(c, sig)) return c;
  std::set<std::string> used;
  for (const auto& v : c.vars) used.insert(v.name());
  for (const auto& [n, d] : sig.functions) used.insert(n);
  for (const auto& [n, s] : sig.constants) used.insert(n);
  unsigned counter = 0;
  auto fresh = [&] {
    std::string name;
    do name = "v" + std::to_string(++counter);
    while (used.count(name));
    used.insert(name);
    return Term::variable(name);
  };

  Clause out = c;
  std::map<Term, Term> var_for;
  for (;;) {
    std::vector<Term> apps = extension_applications(out, sig);
    const Term* target = nullptr;
    // Innermost first: applications_of returns a sorted set, so pick by depth.
    for (const auto& app : apps) {
      bool bad = false;
      for (const auto& a : app.args()) bad = bad || !a.is_variable();
      if (bad && (!target || application_depth(app) < application_depth(*target))) target = &app;
    }
    if (!target) break;
    std::vector<Term> args;
    for (const auto& a : target->args()) {
      if (a.is_variable()) {
        args.push_back(a);
        continue;
      }
      auto it = var_for.find(a);
      if (it == var_for.end()) {
        Term v = fresh();
        it = var_for.emplace(a, v).first;
        out.vars.push_back(v);
        out.guard.push_back(Formula::atom(v, Rel::Eq, a));
      }
      args.push_back(it->second);
    }
    Substitution sigma{{*target, Term::apply(target->name(), std::move(args))}};
    for (auto& g : out.guard) g = substitute(g, sigma);
    for (auto& h : out.head) h = substitute(h, sigma);
  }
  return out;
}

FlatnessReport check_flat_linear(ProblemSpec& spec) {
  FlatnessReport report;
  for (std::size_t k = 0; k < spec.clauses.size(); ++k) {
    Clause& c = spec.clauses[k];
    if (!is_flat(c, spec.signature)) {
      Clause f = flatten_clause(c, spec.signature);
      report.messages.push_back("clause " + std::to_string(k + 1) + " flattened: " + to_string(c) + "  ==>  " +
                                to_string(f));
      c = std::move(f);
      ++report.rewritten;
    }
    c.flat = is_flat(c, spec.signature);
    c.linear = is_linear(c, spec.signature);
    if (!c.linear) {
      report.messages.push_back("clause " + std::to_string(k + 1) + " is not linear: " + to_string(c));
      ++report.nonlinear;
    }
  }
  return report;
}

}  // namespace symelim
