#pragma once

#include <cstddef>
#include <set>
#include <string>

#include "dri/logic/formula.hpp"

namespace dri::logic {

// Parse-tree height with atoms at 1. An Atom with formula arguments sits one
// level above its deepest argument; Opaque counts as 1.
std::size_t depth(const Formula& f);

// Connective applications: an n-ary And/Or contributes n-1, each Not 1, and
// with include_implication each Implies/Iff 1. Independent of how the source
// text was parenthesised.
std::size_t op_count(const Formula& f, bool include_implication = false);

struct Symbols {
  std::set<std::string> predicates;
  std::set<std::string> constants;
  std::set<std::string> variables;
};

// Names inside quantifier scope are variables regardless of spelling.
Symbols collect_symbols(const Formula& f);

struct StructuralMetrics {
  std::size_t depth = 1;
  std::size_t op_count = 0;
  std::set<std::string> predicates;
  std::set<std::string> constants;
  std::set<std::string> variables;
  bool parse_ok = true;
};

StructuralMetrics measure(const Formula& f, bool include_implication = false);

}  // namespace dri::logic
