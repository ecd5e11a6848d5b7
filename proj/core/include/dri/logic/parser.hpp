#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dri/common/error.hpp"
#include "dri/logic/formula.hpp"

namespace dri::logic {

enum class ParseMode { Strict, Lenient };

struct ParseOptions {
  ParseMode mode = ParseMode::Strict;
  // Overrides for the variable/constant naming heuristic.
  std::set<std::string, std::less<>> variable_names;
  std::set<std::string, std::less<>> constant_names;
  std::size_t max_nesting = 256;
};

inline ParseOptions lenient_options() {
  ParseOptions o;
  o.mode = ParseMode::Lenient;
  return o;
}

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::string message, std::vector<std::string> expected);

  // Byte offset into the text handed to parse_formula.
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t offset_;
  std::string detail_;
  std::vector<std::string> expected_;
};

// Parses LaTeX (\land, \forall, \text{Name}, ...), Unicode (∧ ∨ ¬ → ↔ ∀ ∃) and
// ASCII/word spellings (&, |, !, ->, <->, AND, OR, NOT, implies) into one
// tree shape. Precedence, tightest first: ¬, ∧, ∨, →, ↔; → and ↔ associate to
// the right; a quantifier's body extends as far right as possible.
//
// Strict mode throws SyntaxError. Lenient mode never throws on malformed
// input; it returns an Opaque node carrying the text and the failure reason.
Formula parse_formula(std::string_view text, const ParseOptions& options = {});
Formula parse_formula(std::string_view text, ParseMode mode);

// A bare identifier names a variable when it is one lowercase ASCII letter
// optionally followed by digits (x, y, x1); anything else is a constant.
bool looks_like_variable(std::string_view name) noexcept;

}  // namespace dri::logic
