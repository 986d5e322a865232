#pragma once

#include "symelim/formula.hpp"

#include <string>

namespace symelim {

// Output dialect of the report: AND(...), OR(...), (FORALL i0). body,
// numeric literals with a leading underscore and left-nested sums such as
// ((i * t0) - (i * t1)) + la <= _0.

std::string format_rational(const Rational& q);
std::string to_string(const Term& t);
std::string to_string(const Polynomial& p);
std::string to_string(const Atom& a);
std::string to_string(const Formula& f);
std::string to_string(const Clause& c);

}  // namespace symelim
