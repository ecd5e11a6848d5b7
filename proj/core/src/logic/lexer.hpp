#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace dri::logic::detail {

enum class Tok {
  Ident,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Comma,
  Dot,
  Colon,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Forall,
  Exists,
  Relation,  // text holds the canonical symbol: = ≠ < > ≤ ≥
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

// Splits `src` into tokens. Whitespace, backticks, `$` and the LaTeX math
// delimiters \( \) \[ \] are skipped wherever they appear. Throws
// SyntaxError on an unknown character or LaTeX command.
std::vector<Token> tokenize(std::string_view src);

std::string_view describe(Tok kind) noexcept;

}  // namespace dri::logic::detail
