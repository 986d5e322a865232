#pragma once

#include "symelim/flatten.hpp"
#include "symelim/problem.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace symelim {

enum class InstantiationMode { Local, StablyLocal };

/// Per extension symbol, the ground argument tuples occurring in K or G.
using GroundTermSet = std::map<std::string, std::set<std::vector<Term>>>;

/// Raised when a clause cannot be fully instantiated (a variable that occurs
/// below no extension function of the clause's level) or is not flat.
class InstantiationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ground applications of `symbols` occurring in the ground parts of `K`
/// and in `G`, including those nested inside arguments.
GroundTermSet est_terms(const std::vector<Clause>& K, const std::vector<Formula>& G,
                        const std::set<std::string>& symbols);

struct Instance {
  std::size_t clause_index;
  Substitution sigma;
  Formula formula;
};

/// Instances of clause `c` whose applications of `symbols` all take their
/// arguments from `T` (local mode), or all instances over the argument terms
/// of `T` (stably local mode). Variables occurring below no such application
/// are bound through guards `v = t` with ground `t`. Deduplicated by substitution.
std::vector<Instance> instantiate(const Clause& c, std::size_t clause_index, const GroundTermSet& T,
                                  const std::set<std::string>& symbols, InstantiationMode mode);

struct Definition {
  Term constant;
  /// f(a_1, ..., a_n) with purified (extension-free) arguments.
  Term term;
  int level = 0;
};

/// Bijection between definition constants and the ground extension terms they name.
class DefinitionStore {
 public:
  /// Constant for the purified application `app`, created on first use.
  Term intern(const Term& app, int level, const std::set<std::string>& reserved);
  std::optional<Term> constant_for(const Term& app) const;
  const Definition* definition_of(const Term& constant) const;
  const std::vector<Definition>& definitions() const { return defs_; }
  /// Constant -> fully expanded original term (nested definitions unfolded).
  Substitution back_substitution() const;
  Formula expand(const Formula& f) const;
  Term expand(const Term& t) const;

 private:
  std::vector<Definition> defs_;
  std::map<Term, std::size_t> by_term_;
  std::map<Term, std::size_t> by_constant_;
  std::map<std::string, unsigned> counters_;
};

struct CongruenceAxiom {
  std::size_t first, second;  // indices into DefinitionStore::definitions()
  Formula formula;
};

struct ProvenanceEntry {
  int level = 0;
  /// Clause index in the (flattened) problem, or nullopt for a query literal.
  std::optional<std::size_t> clause_index;
  Substitution sigma;
};

/// K0 and G0 (purified instances and goal), Con0, the definitions and the trail.
struct ReducedProblem {
  std::vector<Formula> instances;  // ground instances before purification
  std::vector<ProvenanceEntry> provenance;  // parallel to `instances`
  std::vector<Formula> ground_goal;         // goal before purification
  std::vector<Formula> base_clauses;        // K0, parallel to `instances`
  std::vector<Formula> goal;                // G0, parallel to `ground_goal`
  std::vector<CongruenceAxiom> congruence;  // Con0
  DefinitionStore definitions;
  Signature signature;
  FlatnessReport flatness;

  /// K0 and G0 and Con0 as one conjunction.
  Formula conjunction() const;
  /// Purifies an extra ground formula against the existing definitions,
  /// adding definitions and congruence axioms as needed, and appends it to the goal.
  void add_goal(const Formula& ground);
  /// Plain-text dump: per level the instances, then definitions and Con0.
  std::string dump() const;

  Formula purify_formula(const Formula& ground);
  std::set<std::string> reserved_names() const;
};

/// Purifies ground instances and a ground goal (innermost terms first) and builds Con0.
ReducedProblem purify(const std::vector<Formula>& instances, const std::vector<Formula>& goal, const Signature& sig);

/// Hierarchical reduction: flattens the clauses, then for each level from the
/// highest down to 1 instantiates that level's clauses over the ground terms
/// collected so far, and finally purifies everything.
ReducedProblem reduce_chain(const ProblemSpec& spec);

}  // namespace symelim
