#include "dri/logic/printer.hpp"

#include <array>
#include <string_view>
#include <type_traits>

namespace dri::logic {

namespace {

struct Spellings {
  std::string_view not_op, and_op, or_op, implies_op, iff_op, forall, exists;
  std::string_view neq, leq, geq;
};

constexpr Spellings kUnicode{"¬", " ∧ ", " ∨ ", " → ", " ↔ ", "∀", "∃", "≠", "≤", "≥"};
constexpr Spellings kLatex{"\\neg ", " \\land ", " \\lor ", " \\Rightarrow ", " \\Leftrightarrow ",
                           "\\forall ", "\\exists ", "\\neq", "\\leq", "\\geq"};
constexpr Spellings kAscii{"!", " & ", " | ", " -> ", " <-> ", "forall ", "exists ", "!=", "<=", ">="};

// Binding strength; a child printed in a slot demanding more gets parens.
enum Prec : int { kTop = 0, kIff = 1, kImplies = 2, kOr = 3, kAnd = 4, kUnary = 5 };

bool is_relation(std::string_view p) {
  static constexpr std::array<std::string_view, 6> kRel{"=", "≠", "<", ">", "≤", "≥"};
  for (auto r : kRel)
    if (p == r) return true;
  return false;
}

class Printer {
 public:
  explicit Printer(const Spellings& s) : s_(s) {}

  void formula(const Formula& f, int slot) {
    std::visit([&](const auto& n) { node(n, slot); }, f.node);
  }

  std::string take() { return std::move(out_); }

 private:
  const Spellings& s_;
  std::string out_;

  void term(const Term& t) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Term::Embedded>)
            formula(*v.formula, kTop);
          else
            out_ += v.name;
        },
        t.value);
  }

  std::string_view relation(std::string_view p) const {
    if (p == "≠") return s_.neq;
    if (p == "≤") return s_.leq;
    if (p == "≥") return s_.geq;
    return p;
  }

  void node(const Formula::Atom& a, int) {
    if (is_relation(a.predicate) && a.args.size() == 2) {
      term(a.args[0]);
      out_ += ' ';
      out_ += relation(a.predicate);
      out_ += ' ';
      term(a.args[1]);
      return;
    }
    out_ += a.predicate;
    if (a.args.empty()) return;
    out_ += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) out_ += ", ";
      term(a.args[i]);
    }
    out_ += ')';
  }

  void node(const Formula::Not& n, int) {
    out_ += s_.not_op;
    formula(*n.child, kUnary);
  }

  void nary(const std::vector<Formula>& children, std::string_view op, int own, int slot) {
    const bool parens = own < slot;
    if (parens) out_ += '(';
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (i) out_ += op;
      formula(children[i], own + 1);
    }
    if (parens) out_ += ')';
  }

  void node(const Formula::And& n, int slot) { nary(n.children, s_.and_op, kAnd, slot); }
  void node(const Formula::Or& n, int slot) { nary(n.children, s_.or_op, kOr, slot); }

  void binary(const Formula& l, const Formula& r, std::string_view op, int own, int slot) {
    const bool parens = own < slot;
    if (parens) out_ += '(';
    formula(l, own + 1);
    out_ += op;
    formula(r, own);
    if (parens) out_ += ')';
  }

  void node(const Formula::Implies& n, int slot) {
    binary(*n.antecedent, *n.consequent, s_.implies_op, kImplies, slot);
  }
  void node(const Formula::Iff& n, int slot) { binary(*n.left, *n.right, s_.iff_op, kIff, slot); }

  void node(const Formula::Quantified& q, int slot) {
    const bool parens = slot > kTop;
    if (parens) out_ += '(';
    out_ += q.kind == Quantifier::Forall ? s_.forall : s_.exists;
    for (std::size_t i = 0; i < q.variables.size(); ++i) {
      if (i) out_ += ", ";
      out_ += q.variables[i];
    }
    out_ += ". ";
    formula(*q.body, kTop);
    if (parens) out_ += ')';
  }

  void node(const Formula::Opaque& o, int) { out_ += o.text; }
};

}  // namespace

std::string to_string(const Formula& f, Notation notation) {
  const Spellings& s = notation == Notation::Latex ? kLatex
                       : notation == Notation::Ascii ? kAscii
                                                     : kUnicode;
  Printer p(s);
  p.formula(f, kTop);
  return p.take();
}

}  // namespace dri::logic
