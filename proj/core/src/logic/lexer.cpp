#include "logic/lexer.hpp"

#include <array>
#include <cctype>
#include <utility>

#include "dri/logic/parser.hpp"

namespace dri::logic::detail {

namespace {

struct Spelling {
  std::string_view text;
  Tok kind;
  std::string_view relation = {};
};

// Longest spellings first within each shared prefix.
constexpr std::array kSymbols{
    Spelling{"<->", Tok::Iff},
    Spelling{"<=>", Tok::Iff},
    Spelling{"->", Tok::Implies},
    Spelling{"=>", Tok::Implies},
    Spelling{"<=", Tok::Relation, "≤"},
    Spelling{">=", Tok::Relation, "≥"},
    Spelling{"!=", Tok::Relation, "≠"},
    Spelling{"&&", Tok::And},
    Spelling{"||", Tok::Or},
    Spelling{"&", Tok::And},
    Spelling{"|", Tok::Or},
    Spelling{"!", Tok::Not},
    Spelling{"~", Tok::Not},
    Spelling{"=", Tok::Relation, "="},
    Spelling{"<", Tok::Relation, "<"},
    Spelling{">", Tok::Relation, ">"},
    Spelling{"(", Tok::LParen},
    Spelling{")", Tok::RParen},
    Spelling{"[", Tok::LBracket},
    Spelling{"]", Tok::RBracket},
    Spelling{"{", Tok::LBrace},
    Spelling{"}", Tok::RBrace},
    Spelling{",", Tok::Comma},
    Spelling{".", Tok::Dot},
    Spelling{":", Tok::Colon},
    // Unicode operators (UTF-8).
    Spelling{"∧", Tok::And},
    Spelling{"∨", Tok::Or},
    Spelling{"¬", Tok::Not},
    Spelling{"→", Tok::Implies},
    Spelling{"⇒", Tok::Implies},
    Spelling{"⟹", Tok::Implies},
    Spelling{"↔", Tok::Iff},
    Spelling{"⇔", Tok::Iff},
    Spelling{"⟺", Tok::Iff},
    Spelling{"∀", Tok::Forall},
    Spelling{"∃", Tok::Exists},
    Spelling{"≠", Tok::Relation, "≠"},
    Spelling{"≤", Tok::Relation, "≤"},
    Spelling{"≥", Tok::Relation, "≥"},
};

constexpr std::array kSkippedUnicode{
    std::string_view{"\xC2\xA0"},      // no-break space
    std::string_view{"\xE2\x80\x89"},  // thin space
    std::string_view{"\xE2\x80\x8B"},  // zero-width space
};

constexpr std::array kLatexCommands{
    Spelling{"land", Tok::And},
    Spelling{"wedge", Tok::And},
    Spelling{"lor", Tok::Or},
    Spelling{"vee", Tok::Or},
    Spelling{"neg", Tok::Not},
    Spelling{"lnot", Tok::Not},
    Spelling{"sim", Tok::Not},
    Spelling{"Rightarrow", Tok::Implies},
    Spelling{"rightarrow", Tok::Implies},
    Spelling{"Longrightarrow", Tok::Implies},
    Spelling{"longrightarrow", Tok::Implies},
    Spelling{"implies", Tok::Implies},
    Spelling{"to", Tok::Implies},
    Spelling{"Leftrightarrow", Tok::Iff},
    Spelling{"leftrightarrow", Tok::Iff},
    Spelling{"Longleftrightarrow", Tok::Iff},
    Spelling{"iff", Tok::Iff},
    Spelling{"forall", Tok::Forall},
    Spelling{"exists", Tok::Exists},
    Spelling{"neq", Tok::Relation, "≠"},
    Spelling{"ne", Tok::Relation, "≠"},
    Spelling{"leq", Tok::Relation, "≤"},
    Spelling{"le", Tok::Relation, "≤"},
    Spelling{"geq", Tok::Relation, "≥"},
    Spelling{"ge", Tok::Relation, "≥"},
    Spelling{"lt", Tok::Relation, "<"},
    Spelling{"gt", Tok::Relation, ">"},
};

constexpr std::array<std::string_view, 10> kLatexTextWrappers{
    "text", "textrm", "textit", "textbf", "texttt",
    "mathrm", "mathit", "mathbf", "mathsf", "operatorname"};

constexpr std::array<std::string_view, 12> kLatexIgnored{
    "left", "right", "big", "Big", "bigl", "bigr", "Bigl", "Bigr",
    "quad", "qquad", "displaystyle", "mathopen"};

// Word operators are recognised only in all-lower or all-upper case so that
// predicate names such as `Not` or `Exists` stay identifiers.
constexpr std::array kWords{
    Spelling{"and", Tok::And},       Spelling{"AND", Tok::And},
    Spelling{"or", Tok::Or},         Spelling{"OR", Tok::Or},
    Spelling{"not", Tok::Not},       Spelling{"NOT", Tok::Not},
    Spelling{"implies", Tok::Implies}, Spelling{"IMPLIES", Tok::Implies},
    Spelling{"iff", Tok::Iff},       Spelling{"IFF", Tok::Iff},
    Spelling{"forall", Tok::Forall}, Spelling{"FORALL", Tok::Forall},
    Spelling{"exists", Tok::Exists}, Spelling{"EXISTS", Tok::Exists},
};

bool is_ascii_word_char(unsigned char c) {
  return std::isalnum(c) != 0 || c == '_';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    while (pos_ < src_.size()) step();
    out_.push_back(Token{Tok::End, {}, src_.size()});
    return std::move(out_);
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  std::vector<Token> out_;

  bool starts_with(std::string_view s) const { return src_.substr(pos_).starts_with(s); }

  [[noreturn]] void fail(std::size_t at, std::string msg) const {
    throw SyntaxError(at, std::move(msg), {});
  }

  void emit(Tok kind, std::string text, std::size_t at) {
    out_.push_back(Token{kind, std::move(text), at});
  }

  // Identifier continuation: ASCII word chars, any non-ASCII byte that does
  // not begin an operator, and '.' between two digits (3.5).
  bool ident_char_at(std::size_t i) const {
    const auto c = static_cast<unsigned char>(src_[i]);
    if (is_ascii_word_char(c)) return true;
    if (c == '.' && i > 0 && i + 1 < src_.size() &&
        std::isdigit(static_cast<unsigned char>(src_[i - 1])) &&
        std::isdigit(static_cast<unsigned char>(src_[i + 1])))
      return true;
    if (c >= 0x80) return !operator_at(i) && !skipped_unicode_at(i);
    return false;
  }

  bool operator_at(std::size_t i) const {
    const auto rest = src_.substr(i);
    for (const auto& s : kSymbols)
      if (static_cast<unsigned char>(s.text[0]) >= 0x80 && rest.starts_with(s.text)) return true;
    return false;
  }

  std::size_t skipped_unicode_at(std::size_t i) const {
    const auto rest = src_.substr(i);
    for (auto s : kSkippedUnicode)
      if (rest.starts_with(s)) return s.size();
    return 0;
  }

  void step() {
    const auto c = static_cast<unsigned char>(src_[pos_]);
    if (std::isspace(c) || c == '`' || c == '$') {
      ++pos_;
      return;
    }
    if (auto n = skipped_unicode_at(pos_)) {
      pos_ += n;
      return;
    }
    if (c == '\\') {
      latex();
      return;
    }
    if (ident_char_at(pos_)) {
      identifier();
      return;
    }
    for (const auto& s : kSymbols) {
      if (starts_with(s.text)) {
        emit(s.kind, std::string(s.relation.empty() ? s.text : s.relation), pos_);
        pos_ += s.text.size();
        return;
      }
    }
    fail(pos_, "unexpected character '" + std::string(1, static_cast<char>(c)) + "'");
  }

  void identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && ident_char_at(pos_)) ++pos_;
    std::string word(src_.substr(start, pos_ - start));
    for (const auto& w : kWords) {
      if (word == w.text) {
        emit(w.kind, word, start);
        return;
      }
    }
    emit(Tok::Ident, std::move(word), start);
  }

  void latex() {
    const std::size_t start = pos_;
    ++pos_;  // backslash
    if (pos_ >= src_.size()) fail(start, "dangling backslash");
    const char next = src_[pos_];
    if (next == '(' || next == ')' || next == '[' || next == ']' || next == ',' ||
        next == ';' || next == ':' || next == '!' || next == ' ' || next == '\\') {
      ++pos_;
      return;
    }
    if (next == '{' || next == '}') {
      emit(next == '{' ? Tok::LBrace : Tok::RBrace, std::string(1, next), start);
      ++pos_;
      return;
    }
    const std::size_t name_start = pos_;
    while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const auto name = src_.substr(name_start, pos_ - name_start);
    if (name.empty()) fail(start, "unknown LaTeX escape");

    for (const auto& cmd : kLatexCommands) {
      if (name == cmd.text) {
        emit(cmd.kind, std::string(cmd.relation.empty() ? cmd.text : cmd.relation), start);
        return;
      }
    }
    for (auto w : kLatexTextWrappers) {
      if (name == w) {
        text_group(start);
        return;
      }
    }
    for (auto w : kLatexIgnored) {
      if (name == w) return;
    }
    fail(start, "unknown LaTeX command \\" + std::string(name));
  }

  // \text{Name} yields the identifier Name; inner whitespace becomes '_'.
  void text_group(std::size_t start) {
    while (pos_ < src_.size() && src_[pos_] == ' ') ++pos_;
    if (pos_ >= src_.size() || src_[pos_] != '{') fail(pos_, "expected '{' after text command");
    const std::size_t open = pos_++;
    const auto close = src_.find('}', pos_);
    if (close == std::string_view::npos) fail(open, "unterminated text group");
    auto body = src_.substr(pos_, close - pos_);
    pos_ = close + 1;
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
    if (body.empty()) fail(open, "empty text group");
    std::string name;
    for (char ch : body) {
      const auto u = static_cast<unsigned char>(ch);
      if (std::isspace(u)) {
        if (!name.empty() && name.back() != '_') name += '_';
      } else if (is_ascii_word_char(u) || u >= 0x80) {
        name += ch;
      } else if (ch == '\\') {
        continue;  // \_ inside \text
      } else {
        fail(open, "unexpected character in text group");
      }
    }
    emit(Tok::Ident, std::move(name), start);
  }
};

}  // namespace

std::vector<Token> tokenize(std::string_view src) { return Lexer(src).run(); }

std::string_view describe(Tok kind) noexcept {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::LParen: return "(";
    case Tok::RParen: return ")";
    case Tok::LBracket: return "[";
    case Tok::RBracket: return "]";
    case Tok::LBrace: return "{";
    case Tok::RBrace: return "}";
    case Tok::Comma: return ",";
    case Tok::Dot: return ".";
    case Tok::Colon: return ":";
    case Tok::Not: return "¬";
    case Tok::And: return "∧";
    case Tok::Or: return "∨";
    case Tok::Implies: return "→";
    case Tok::Iff: return "↔";
    case Tok::Forall: return "∀";
    case Tok::Exists: return "∃";
    case Tok::Relation: return "relation";
    case Tok::End: return "end of input";
  }
  return "?";
}

}  // namespace dri::logic::detail
