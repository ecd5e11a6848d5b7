#include "dri/logic/formula.hpp"

#include <type_traits>

namespace dri::logic {

namespace {

template <typename Tag>
Formula flatten(std::vector<Formula> children) {
  std::vector<Formula> flat;
  flat.reserve(children.size());
  for (auto& child : children) {
    if (auto* same = std::get_if<Tag>(&child.node)) {
      for (auto& grandchild : same->children) flat.push_back(std::move(grandchild));
    } else {
      flat.push_back(std::move(child));
    }
  }
  if (flat.size() == 1) return std::move(flat.front());
  return Formula{Tag{std::move(flat)}};
}

}  // namespace

Term constant(std::string name) { return Term{Term::Constant{std::move(name)}}; }
Term variable(std::string name) { return Term{Term::Variable{std::move(name)}}; }
Term embedded(Formula f) { return Term{Term::Embedded{std::move(f)}}; }

Formula atom(std::string predicate, std::vector<Term> args) {
  return Formula{Formula::Atom{std::move(predicate), std::move(args)}};
}
Formula neg(Formula child) { return Formula{Formula::Not{std::move(child)}}; }
Formula conj(std::vector<Formula> children) { return flatten<Formula::And>(std::move(children)); }
Formula disj(std::vector<Formula> children) { return flatten<Formula::Or>(std::move(children)); }
Formula implies(Formula antecedent, Formula consequent) {
  return Formula{Formula::Implies{std::move(antecedent), std::move(consequent)}};
}
Formula iff(Formula left, Formula right) {
  return Formula{Formula::Iff{std::move(left), std::move(right)}};
}
Formula forall(std::vector<std::string> variables, Formula body) {
  return Formula{Formula::Quantified{Quantifier::Forall, std::move(variables), std::move(body)}};
}
Formula exists(std::vector<std::string> variables, Formula body) {
  return Formula{Formula::Quantified{Quantifier::Exists, std::move(variables), std::move(body)}};
}
Formula opaque(std::string text, std::string reason) {
  return Formula{Formula::Opaque{std::move(text), std::move(reason)}};
}

std::size_t node_count(const Formula& f) {
  return std::visit(
      [](const auto& n) -> std::size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Formula::Atom>) {
          std::size_t total = 1;
          for (const auto& arg : n.args) {
            if (const auto* e = std::get_if<Term::Embedded>(&arg.value))
              total += node_count(*e->formula);
            else
              total += 1;
          }
          return total;
        } else if constexpr (std::is_same_v<T, Formula::Not>) {
          return 1 + node_count(*n.child);
        } else if constexpr (std::is_same_v<T, Formula::And> || std::is_same_v<T, Formula::Or>) {
          std::size_t total = 1;
          for (const auto& c : n.children) total += node_count(c);
          return total;
        } else if constexpr (std::is_same_v<T, Formula::Implies>) {
          return 1 + node_count(*n.antecedent) + node_count(*n.consequent);
        } else if constexpr (std::is_same_v<T, Formula::Iff>) {
          return 1 + node_count(*n.left) + node_count(*n.right);
        } else if constexpr (std::is_same_v<T, Formula::Quantified>) {
          return 1 + node_count(*n.body);
        } else {
          return 1;
        }
      },
      f.node);
}

}  // namespace dri::logic
