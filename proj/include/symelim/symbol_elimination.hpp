#pragma once

#include "symelim/locality.hpp"
#include "symelim/qe.hpp"
#include "symelim/task.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace symelim {

/// Constants of a reduced problem split three ways: kept (parameters and
/// names of parameter terms), generalized to universal variables (arguments
/// of parameter functions), and eliminated (everything else).
struct ConstantClassification {
  std::vector<Term> cf;
  std::vector<Term> cp;
  std::vector<Term> c;
};

class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ConstantClassification classify_constants(const ReducedProblem& rp, const std::vector<std::string>& parameters);

struct StepTiming {
  std::string name;
  double seconds = 0;
};

struct Statistics {
  std::vector<StepTiming> steps;
  std::size_t instances = 0;
  std::size_t definitions = 0;
  std::size_t congruence = 0;
  std::size_t eliminated = 0;
  std::size_t atoms_before = 0;  // before simplification with assumptions
  std::size_t atoms_after = 0;
  double total() const;
};

struct ConstraintResult {
  std::string task;
  /// The universally closed constraint, simplified under the assumptions.
  Formula formula;
  /// The same constraint before the final simplification.
  Formula unsimplified;
  /// The quantifier-free result of the elimination step (before negation).
  Formula eliminated;
  ConstantClassification classification;
  /// Universal variables standing for the former cp constants.
  std::vector<Term> universal;
  Statistics stats;
};

/// Reduces the problem and, when enabled, conjoins the assumptions
/// (universal ones instantiated on the problem's ground terms).
ReducedProblem reduce_task(const Task& task);

/// Weakest universal constraint on the parameters under which the task's
/// query is unsatisfiable. Throws QeError, InstantiationError, ClassificationError.
ConstraintResult generate_constraint(const Task& task);

enum class SatVerdict { Unsat, Sat };

struct SatResult {
  SatVerdict verdict = SatVerdict::Unsat;
  /// Values of the reduced problem's constants (sat only).
  Valuation model;
  /// The model extended to the ground extension terms (sat only).
  Valuation extended;
  Statistics stats;
};

/// Satisfiability of the task's problem (T0 with K and G).
SatResult check_sat(const Task& task);
/// Satisfiability of a reduced problem, with a witness extended to its
/// extension terms. Every generated instance and goal holds in the witness.
SatResult check_sat(const ReducedProblem& rp);

/// Re-checks a generated constraint: its instances over the task's ground
/// terms, conjoined with the reduced problem, must be unsatisfiable.
bool constraint_refutes_goal(const Task& task, const ConstraintResult& result);

}  // namespace symelim
