#pragma once

#include "symelim/locality.hpp"

#include <string>

namespace symelim {

/// SMT-LIB 2 script (QF_NRA) asserting K0, G0 and Con0 of a reduced problem.
/// Definitions are listed as comments. Products are kept as products.
std::string export_smtlib(const ReducedProblem& rp);

/// The same for a plain list of ground, extension-free formulas.
std::string export_smtlib(const std::vector<Formula>& assertions);

}  // namespace symelim
