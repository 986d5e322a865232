#pragma once

#include "symelim/problem.hpp"
#include "symelim/task.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace symelim {

/// Raised when an automaton does not fit the supported fragment.
class VcError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mode of a (template) automaton. In `flow`, a primed symbol x' is the
/// derivative of x. `rates` constrain inputs while the mode is active and are
/// only used by families.
struct Mode {
  std::string name;
  std::vector<Formula> inv;
  std::vector<Formula> flow;
  std::vector<Formula> init;
  std::vector<Formula> rates;
};

/// In `jump`, a primed symbol x' is the value of x after the jump.
struct Edge {
  std::string source;
  std::string target;
  std::vector<Formula> guard;
  std::vector<Formula> jump;
};

/// Parametric linear hybrid automaton. State variables occur in the formulas
/// as constants named like the variable.
struct Plha {
  std::string name;
  std::vector<std::string> parameters;
  std::vector<std::string> parameter_functions;  // unary
  std::vector<std::string> variables;
  /// Constraints holding at every point in time (e.g. L >= 0).
  std::vector<Formula> axioms;
  std::vector<Formula> assumptions;
  std::vector<Mode> modes;
  std::vector<Edge> edges;
  std::vector<Formula> safety;

  const Mode& mode(const std::string& name) const;
};

/// Which value a sensed quantity x_p(i) holds between topology changes.
enum class Sensing {
  Current,   // always x(p(i))
  Measured,  // x(p(i)) at the last measurement, refreshed when p changes
};

struct SensedValue {
  std::string name;
  std::string variable;
  std::string link;
};

/// One guarded case of a topology update: if the guard holds for index i,
/// each listed link p is redirected to the given target.
struct UpdateCase {
  std::vector<Formula> guard;
  std::vector<std::pair<std::string, Term>> assignments;
};

struct TopologyUpdate {
  std::string name;
  std::vector<UpdateCase> cases;
};

/// Family of similar automata indexed by one index variable. Template
/// formulas use the index as a bound variable: a bare symbol x stands for x(i)
/// and is stored as such.
struct Family {
  std::string name;
  std::string index = "i";
  std::optional<Polynomial> lower, upper;
  std::vector<std::string> parameters;
  std::vector<std::string> parameter_functions;
  std::vector<std::string> variables;
  /// Per-component quantities constant during a flow, in chain order.
  std::vector<std::string> inputs;
  std::vector<std::string> links;
  std::vector<SensedValue> sensed;
  Sensing sensing = Sensing::Current;
  /// Whether flows require the mode invariant at the end of the interval.
  bool invariants_at_end = true;
  std::vector<Formula> assumptions;
  std::vector<Mode> modes;
  std::vector<Formula> flow;  // shared by all modes
  std::vector<Edge> edges;
  std::vector<Clause> link_clauses;
  std::vector<TopologyUpdate> updates;
  std::vector<Formula> safety;

  std::vector<Formula> range(const Term& index) const;
};

struct AutomatonFile {
  std::optional<Plha> plha;
  std::optional<Family> family;
};

/// Parses an automaton description (see README for the grammar). Throws ParseError.
AutomatonFile parse_automaton(std::string_view text);

/// Endpoint terms of the state symbols for one flow interval.
struct FlowEndpoints {
  /// derivative symbol -> (value at t0, value at t1)
  std::map<Term, std::pair<Term, Term>> derivative;
  /// Undotted state symbols, which flows must not mention.
  std::set<Term> state;
};

/// Endpoint encoding of a flow over [t0, t1]: every conjunct sum c_i x_i' rel c
/// becomes sum c_i (x_i(t1) - x_i(t0)) rel c (t1 - t0). Throws VcError on
/// strict or non-linear conditions and on undotted state symbols.
Formula underline_flow(const std::vector<Formula>& flow, const FlowEndpoints& endpoints, const Term& t0,
                       const Term& t1);

/// A generated verification condition: unsatisfiable iff the checked step
/// preserves the safety property, for the parameters and assumptions given.
struct Vc {
  std::string name;
  ProblemSpec problem;
  std::vector<std::string> parameters;
  std::vector<Formula> assumptions;
};

Vc vc_init(const Plha& a, const Mode& q);
Vc vc_flow(const Plha& a, const Mode& q);
Vc vc_jump(const Plha& a, const Edge& e);
/// Every init, flow and jump condition of the automaton.
std::vector<Vc> plha_vcs(const Plha& a);

Vc sflha_flow_vc(const Family& f);
/// One condition per case of the update.
std::vector<Vc> sflha_topology_vcs(const Family& f, const TopologyUpdate& u);
/// Jump conditions of the component template for one Skolem index.
std::vector<Vc> sflha_jump_vcs(const Family& f);
std::vector<Vc> family_vcs(const Family& f);

/// Pairs of cases whose guards can hold together (should be empty).
std::vector<std::pair<std::size_t, std::size_t>> overlapping_cases(const Family& f, const TopologyUpdate& u);

Task to_task(const Vc& vc, bool strong_simplification = true);
/// A task file holding one GENERATE_CONSTRAINTS task per condition.
std::string print_task_file(const std::vector<Vc>& vcs, const std::string& header_comment);

}  // namespace symelim
