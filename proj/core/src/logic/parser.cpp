#include "dri/logic/parser.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "logic/lexer.hpp"

namespace dri::logic {

namespace {

using detail::Tok;
using detail::Token;

std::string format_message(std::size_t offset, const std::string& detail,
                           const std::vector<std::string>& expected) {
  std::string msg = "syntax error at byte " + std::to_string(offset) + ": " + detail;
  if (!expected.empty()) {
    msg += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    msg += ")";
  }
  return msg;
}

Tok closer_for(Tok open) {
  switch (open) {
    case Tok::LParen: return Tok::RParen;
    case Tok::LBracket: return Tok::RBracket;
    default: return Tok::RBrace;
  }
}

bool is_open(Tok t) { return t == Tok::LParen || t == Tok::LBracket || t == Tok::LBrace; }

class Parser {
 public:
  Parser(std::vector<Token> tokens, const ParseOptions& options)
      : toks_(std::move(tokens)), opts_(options) {}

  Formula parse() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End) {
      fail("unexpected " + quoted(peek()), {"end of input", "∧", "∨", "→", "↔"});
    }
    return f;
  }

 private:
  std::vector<Token> toks_;
  const ParseOptions& opts_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
  std::vector<std::string> bound_;

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > p.opts_.max_nesting) p.fail("nesting exceeds " + std::to_string(p.opts_.max_nesting), {});
    }
    ~DepthGuard() { --p.depth_; }
  };

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    advance();
    return true;
  }

  static std::string quoted(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    if (t.kind == Tok::Ident || t.kind == Tok::Relation) return "'" + t.text + "'";
    return "'" + std::string(detail::describe(t.kind)) + "'";
  }

  [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
    throw SyntaxError(peek().offset, what, std::move(expected));
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    if (accept(Tok::Iff)) {
      DepthGuard guard(*this);
      return iff(std::move(lhs), parse_iff());
    }
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (accept(Tok::Implies)) {
      DepthGuard guard(*this);
      return implies(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    std::vector<Formula> items;
    items.push_back(parse_and());
    while (accept(Tok::Or)) items.push_back(parse_and());
    return disj(std::move(items));
  }

  Formula parse_and() {
    std::vector<Formula> items;
    items.push_back(parse_unary());
    while (accept(Tok::And)) items.push_back(parse_unary());
    return conj(std::move(items));
  }

  Formula parse_unary() {
    DepthGuard guard(*this);
    if (accept(Tok::Not)) return neg(parse_unary());
    if (peek().kind == Tok::Forall || peek().kind == Tok::Exists) return parse_quantifier();
    return parse_primary();
  }

  Formula parse_quantifier() {
    const Quantifier kind = advance().kind == Tok::Forall ? Quantifier::Forall : Quantifier::Exists;
    std::vector<std::string> vars;
    if (peek().kind != Tok::Ident) fail("quantifier without variable", {"identifier"});
    vars.push_back(advance().text);
    // `∀x, y P` lists variables; `∃x, P(x)` uses the comma as separator.
    while (peek().kind == Tok::Comma && peek(1).kind == Tok::Ident && peek(2).kind != Tok::LParen) {
      advance();
      vars.push_back(advance().text);
    }
    if (!accept(Tok::Dot) && !accept(Tok::Colon)) accept(Tok::Comma);

    const std::size_t scope = bound_.size();
    bound_.insert(bound_.end(), vars.begin(), vars.end());
    Formula body = parse_iff();
    bound_.resize(scope);
    return Formula{Formula::Quantified{kind, std::move(vars), std::move(body)}};
  }

  Formula parse_primary() {
    const Token& t = peek();
    if (is_open(t.kind)) {
      const Tok close = closer_for(advance().kind);
      Formula inner = parse_iff();
      if (!accept(close)) fail("unbalanced group", {std::string(detail::describe(close))});
      return inner;
    }
    if (t.kind == Tok::Ident) {
      Formula lhs = parse_application();
      if (peek().kind == Tok::Relation) {
        std::string rel = advance().text;
        if (peek().kind != Tok::Ident) fail("relation without right operand", {"identifier"});
        Formula rhs = parse_application();
        std::vector<Term> args;
        args.push_back(to_term(std::move(lhs)));
        args.push_back(to_term(std::move(rhs)));
        return atom(std::move(rel), std::move(args));
      }
      return lhs;
    }
    fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected " + quoted(t),
         {"identifier", "(", "¬", "∀", "∃"});
  }

  // Name or Name(arg, ...). Arguments may be whole formulas.
  Formula parse_application() {
    std::string name = advance().text;
    if (!accept(Tok::LParen)) return atom(std::move(name));
    DepthGuard guard(*this);
    std::vector<Term> args;
    if (accept(Tok::RParen)) return atom(std::move(name), std::move(args));
    do {
      args.push_back(to_term(parse_iff()));
    } while (accept(Tok::Comma));
    if (!accept(Tok::RParen)) fail("unterminated argument list", {",", ")"});
    return atom(std::move(name), std::move(args));
  }

  Term to_term(Formula f) {
    if (auto* a = std::get_if<Formula::Atom>(&f.node); a && a->args.empty()) {
      return classify(std::move(a->predicate));
    }
    return embedded(std::move(f));
  }

  Term classify(std::string name) const {
    if (std::find(bound_.begin(), bound_.end(), name) != bound_.end()) return variable(std::move(name));
    if (opts_.variable_names.contains(name)) return variable(std::move(name));
    if (opts_.constant_names.contains(name)) return constant(std::move(name));
    if (looks_like_variable(name)) return variable(std::move(name));
    return constant(std::move(name));
  }
};

bool blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(), [](char c) {
    return c == '`' || std::isspace(static_cast<unsigned char>(c));
  });
}

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::string message, std::vector<std::string> expected)
    : Error(ErrorCode::Syntax, format_message(offset, message, expected)),
      offset_(offset),
      detail_(std::move(message)),
      expected_(std::move(expected)) {}

bool looks_like_variable(std::string_view name) noexcept {
  if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

Formula parse_formula(std::string_view text, const ParseOptions& options) {
  try {
    if (blank(text)) throw SyntaxError(0, "empty expression", {"identifier", "(", "¬", "∀", "∃"});
    Parser parser(detail::tokenize(text), options);
    return parser.parse();
  } catch (const SyntaxError& e) {
    if (options.mode == ParseMode::Strict) throw;
    return opaque(std::string(text), e.what());
  }
}

Formula parse_formula(std::string_view text, ParseMode mode) {
  ParseOptions options;
  options.mode = mode;
  return parse_formula(text, options);
}

}  // namespace dri::logic
