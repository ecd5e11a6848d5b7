#include "dri/logic/metrics.hpp"

#include <algorithm>
#include <type_traits>
#include <vector>

namespace dri::logic {

std::size_t depth(const Formula& f) {
  return std::visit(
      [](const auto& n) -> std::size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Formula::Atom>) {
          std::size_t deepest = 0;
          for (const auto& arg : n.args)
            if (const auto* e = std::get_if<Term::Embedded>(&arg.value))
              deepest = std::max(deepest, depth(*e->formula));
          return 1 + deepest;
        } else if constexpr (std::is_same_v<T, Formula::Not>) {
          return 1 + depth(*n.child);
        } else if constexpr (std::is_same_v<T, Formula::And> || std::is_same_v<T, Formula::Or>) {
          std::size_t deepest = 0;
          for (const auto& c : n.children) deepest = std::max(deepest, depth(c));
          return 1 + deepest;
        } else if constexpr (std::is_same_v<T, Formula::Implies>) {
          return 1 + std::max(depth(*n.antecedent), depth(*n.consequent));
        } else if constexpr (std::is_same_v<T, Formula::Iff>) {
          return 1 + std::max(depth(*n.left), depth(*n.right));
        } else if constexpr (std::is_same_v<T, Formula::Quantified>) {
          return 1 + depth(*n.body);
        } else {
          return 1;
        }
      },
      f.node);
}

std::size_t op_count(const Formula& f, bool include_implication) {
  return std::visit(
      [&](const auto& n) -> std::size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Formula::Atom>) {
          std::size_t total = 0;
          for (const auto& arg : n.args)
            if (const auto* e = std::get_if<Term::Embedded>(&arg.value))
              total += op_count(*e->formula, include_implication);
          return total;
        } else if constexpr (std::is_same_v<T, Formula::Not>) {
          return 1 + op_count(*n.child, include_implication);
        } else if constexpr (std::is_same_v<T, Formula::And> || std::is_same_v<T, Formula::Or>) {
          std::size_t total = n.children.size() - 1;
          for (const auto& c : n.children) total += op_count(c, include_implication);
          return total;
        } else if constexpr (std::is_same_v<T, Formula::Implies>) {
          return (include_implication ? 1 : 0) + op_count(*n.antecedent, include_implication) +
                 op_count(*n.consequent, include_implication);
        } else if constexpr (std::is_same_v<T, Formula::Iff>) {
          return (include_implication ? 1 : 0) + op_count(*n.left, include_implication) +
                 op_count(*n.right, include_implication);
        } else if constexpr (std::is_same_v<T, Formula::Quantified>) {
          return op_count(*n.body, include_implication);
        } else {
          return 0;
        }
      },
      f.node);
}

namespace {

class SymbolCollector {
 public:
  Symbols out;

  void formula(const Formula& f) {
    std::visit([&](const auto& n) { node(n); }, f.node);
  }

 private:
  std::vector<std::string> scope_;

  bool bound(const std::string& name) const {
    return std::find(scope_.begin(), scope_.end(), name) != scope_.end();
  }

  void node(const Formula::Atom& a) {
    out.predicates.insert(a.predicate);
    for (const auto& arg : a.args) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Term::Embedded>) {
              formula(*v.formula);
            } else if constexpr (std::is_same_v<T, Term::Variable>) {
              out.variables.insert(v.name);
            } else {
              (bound(v.name) ? out.variables : out.constants).insert(v.name);
            }
          },
          arg.value);
    }
  }
  void node(const Formula::Not& n) { formula(*n.child); }
  void node(const Formula::And& n) {
    for (const auto& c : n.children) formula(c);
  }
  void node(const Formula::Or& n) {
    for (const auto& c : n.children) formula(c);
  }
  void node(const Formula::Implies& n) {
    formula(*n.antecedent);
    formula(*n.consequent);
  }
  void node(const Formula::Iff& n) {
    formula(*n.left);
    formula(*n.right);
  }
  void node(const Formula::Quantified& q) {
    const auto mark = scope_.size();
    for (const auto& v : q.variables) {
      scope_.push_back(v);
      out.variables.insert(v);
    }
    formula(*q.body);
    scope_.resize(mark);
  }
  void node(const Formula::Opaque&) {}
};

}  // namespace

Symbols collect_symbols(const Formula& f) {
  SymbolCollector c;
  c.formula(f);
  return std::move(c.out);
}

StructuralMetrics measure(const Formula& f, bool include_implication) {
  auto symbols = collect_symbols(f);
  StructuralMetrics m;
  m.depth = depth(f);
  m.op_count = op_count(f, include_implication);
  m.predicates = std::move(symbols.predicates);
  m.constants = std::move(symbols.constants);
  m.variables = std::move(symbols.variables);
  m.parse_ok = !f.is<Formula::Opaque>();
  return m;
}

}  // namespace dri::logic
