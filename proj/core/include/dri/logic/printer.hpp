#pragma once

#include <string>

#include "dri/logic/formula.hpp"

namespace dri::logic {

enum class Notation { Unicode, Latex, Ascii };

// Renders with the minimum parentheses needed for parse_formula to rebuild
// the same tree. Quantified subformulas are parenthesised unless they sit at
// the top level, in an argument slot, or directly under another quantifier.
// Opaque nodes print their raw text and do not round-trip.
std::string to_string(const Formula& f, Notation notation = Notation::Unicode);

}  // namespace dri::logic
