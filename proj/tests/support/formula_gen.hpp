#pragma once

// Seeded generators for formulas and extractions. Generated trees are in the
// canonical shape the parser produces (flattened And/Or, no zero-argument
// atom wrapped as an embedded term), so parse(print(f)) == f is expected.

#include <cstddef>
#include <string>
#include <vector>

#include "dri/common/random.hpp"
#include "dri/extract/elements.hpp"
#include "dri/logic/formula.hpp"
#include "dri/logic/printer.hpp"

namespace dri::testing {

struct FormulaShape {
  std::size_t max_depth = 5;
  bool quantifiers = true;
  bool embedded = true;
  bool relations = true;
  bool implications = true;
};

inline std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(uniform_below(rng, n)); }
inline bool coin(Rng& rng, double p = 0.5) { return uniform_unit(rng) < p; }

inline const std::vector<std::string>& predicate_pool() {
  static const std::vector<std::string> pool{"Likes", "Owns", "Student", "Drinks", "Cause", "Inhibit",
                                             "P0",    "Q1",   "Risk",    "Aware",  "Contain", "Visit"};
  return pool;
}

inline const std::vector<std::string>& constant_pool() {
  static const std::vector<std::string> pool{"Rina", "Coffee", "Hormone", "Jane", "Water", "Protein", "C7", "Paris"};
  return pool;
}

inline const std::vector<std::string>& variable_pool() {
  static const std::vector<std::string> pool{"x", "y", "z", "w1"};
  return pool;
}

logic::Formula random_formula(Rng& rng, const FormulaShape& shape, std::size_t budget);

inline logic::Term random_leaf_term(Rng& rng) {
  if (coin(rng, 0.35)) return logic::variable(variable_pool()[pick(rng, variable_pool().size())]);
  return logic::constant(constant_pool()[pick(rng, constant_pool().size())]);
}

inline logic::Formula random_atom(Rng& rng, const FormulaShape& shape, std::size_t budget) {
  const auto& preds = predicate_pool();
  std::string name = preds[pick(rng, preds.size())];
  const std::size_t arity = pick(rng, 4);  // 0..3
  std::vector<logic::Term> args;
  for (std::size_t i = 0; i < arity; ++i) {
    if (shape.embedded && budget > 1 && coin(rng, 0.15)) {
      // Anything but a bare zero-argument atom, which would read back as a
      // constant or variable.
      logic::Formula inner = random_formula(rng, shape, budget - 1);
      if (const auto* a = std::get_if<logic::Formula::Atom>(&inner.node); a && a->args.empty())
        inner = logic::neg(std::move(inner));
      args.push_back(logic::embedded(std::move(inner)));
    } else {
      args.push_back(random_leaf_term(rng));
    }
  }
  return logic::atom(std::move(name), std::move(args));
}

inline logic::Formula random_relation(Rng& rng) {
  static const std::vector<std::string> rels{"=", "≠", "<", ">", "≤", "≥"};
  std::vector<logic::Term> args;
  args.push_back(random_leaf_term(rng));
  args.push_back(random_leaf_term(rng));
  return logic::atom(rels[pick(rng, rels.size())], std::move(args));
}

inline logic::Formula random_formula(Rng& rng, const FormulaShape& shape, std::size_t budget) {
  if (budget <= 1 || coin(rng, 0.25)) {
    if (shape.relations && coin(rng, 0.1)) return random_relation(rng);
    return random_atom(rng, shape, budget);
  }
  const std::size_t kinds = shape.implications ? 6 : 4;
  switch (pick(rng, kinds)) {
    case 0:
      return logic::neg(random_formula(rng, shape, budget - 1));
    case 1:
    case 2: {
      const bool is_and = pick(rng, 2) == 0;
      std::vector<logic::Formula> kids;
      const std::size_t n = 2 + pick(rng, 3);
      for (std::size_t i = 0; i < n; ++i) {
        logic::Formula k = random_formula(rng, shape, budget - 1);
        // A same-kind child would be flattened by the parser.
        if ((is_and && k.is<logic::Formula::And>()) || (!is_and && k.is<logic::Formula::Or>())) k = logic::neg(std::move(k));
        kids.push_back(std::move(k));
      }
      return is_and ? logic::Formula{logic::Formula::And{std::move(kids)}}
                    : logic::Formula{logic::Formula::Or{std::move(kids)}};
    }
    case 3: {
      if (!shape.quantifiers) return logic::neg(random_formula(rng, shape, budget - 1));
      std::vector<std::string> vars{variable_pool()[pick(rng, variable_pool().size())]};
      if (coin(rng, 0.3)) {
        const auto& extra = variable_pool()[pick(rng, variable_pool().size())];
        if (extra != vars.front()) vars.push_back(extra);
      }
      auto body = random_formula(rng, shape, budget - 1);
      return coin(rng) ? logic::forall(std::move(vars), std::move(body))
                       : logic::exists(std::move(vars), std::move(body));
    }
    case 4:
      return logic::implies(random_formula(rng, shape, budget - 1), random_formula(rng, shape, budget - 1));
    default:
      return logic::iff(random_formula(rng, shape, budget - 1), random_formula(rng, shape, budget - 1));
  }
}

inline logic::Formula random_formula(Rng& rng, const FormulaShape& shape = {}) {
  return random_formula(rng, shape, 1 + pick(rng, shape.max_depth));
}

// Symbol lists with unique names and random glosses.
inline std::vector<extract::Symbol> random_symbols(Rng& rng, const std::vector<std::string>& pool, std::size_t n,
                                                   const char* prefix) {
  std::vector<extract::Symbol> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string name = i < pool.size() ? pool[i] : std::string(prefix) + std::to_string(i);
    out.push_back({name, name, "gloss " + std::to_string(pick(rng, 1000))});
  }
  return out;
}

inline extract::Expression random_expression(Rng& rng, const FormulaShape& shape = {}, double opaque_rate = 0.05) {
  if (coin(rng, opaque_rate)) {
    std::string text = "Derivation cannot proceed.";
    return {text, logic::opaque(text, "syntax error")};
  }
  auto f = random_formula(rng, shape);
  std::string raw = logic::to_string(f);
  return {std::move(raw), std::move(f)};
}

inline extract::LogicalElements random_elements(Rng& rng, const FormulaShape& shape = {}) {
  extract::LogicalElements e;
  e.predicates = random_symbols(rng, predicate_pool(), pick(rng, 8), "Pred");
  e.constants = random_symbols(rng, constant_pool(), pick(rng, 8), "Const");
  const std::size_t n = pick(rng, 10);
  for (std::size_t i = 0; i < n; ++i) e.expressions.push_back(random_expression(rng, shape));
  return e;
}

inline extract::OptionAnalysis random_option(Rng& rng, std::size_t index, const FormulaShape& shape = {}) {
  extract::OptionAnalysis o;
  o.option_index = index;
  o.option_text = "option " + std::to_string(index);
  const std::size_t n_pre = pick(rng, 5);
  for (std::size_t i = 0; i < n_pre; ++i) o.preconditions.push_back(random_expression(rng, shape));
  o.deduction_target = random_expression(rng, shape, 0.0);
  const std::size_t n_steps = pick(rng, 6);
  for (std::size_t i = 0; i < n_steps; ++i)
    o.steps.push_back({i + 1, "step " + std::to_string(i + 1), random_expression(rng, shape), "ok"});
  return o;
}

inline extract::OptionAnalyses random_analyses(Rng& rng, const FormulaShape& shape = {}) {
  extract::OptionAnalyses a;
  const std::size_t n = 1 + pick(rng, 4);
  for (std::size_t i = 0; i < n; ++i) a.options.push_back(random_option(rng, i, shape));
  return a;
}

}  // namespace dri::testing
