#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dri/logic/formula.hpp"
#include "dri/logic/parser.hpp"

namespace dri::extract {

// An extracted expression: the model's text and its (lenient) parse.
struct Expression {
  std::string raw;
  logic::Formula formula;

  bool parse_ok() const noexcept { return !formula.is<logic::Formula::Opaque>(); }
};

Expression make_expression(std::string raw, const logic::ParseOptions& options = logic::lenient_options());

// Predicate or constant with its gloss. `signature` keeps the model's
// spelling (e.g. "Consumes(x, y)"); `name` is the bare identifier used for
// deduplication and counting.
struct Symbol {
  std::string name;
  std::string signature;
  std::string gloss;
};

struct LogicalElements {
  std::vector<Symbol> predicates;
  std::vector<Symbol> constants;
  std::vector<Expression> expressions;

  // Distinct names; the lists are already deduplicated on construction.
  std::size_t predicate_count() const noexcept { return predicates.size(); }
  std::size_t constant_count() const noexcept { return constants.size(); }
  std::size_t parse_failures() const noexcept;
};

struct ReasoningStep {
  std::size_t step = 1;
  std::string task;
  Expression expression;
  std::string result;
};

struct OptionAnalysis {
  std::size_t option_index = 0;
  std::string option_text;
  std::vector<Expression> preconditions;
  Expression deduction_target;
  std::vector<ReasoningStep> steps;
  bool is_correct = false;

  std::size_t parse_failures() const noexcept;
};

struct OptionAnalyses {
  std::vector<OptionAnalysis> options;
  std::vector<std::string> warnings;
};

// Appends `symbol` unless a symbol with the same name is already present.
void add_unique(std::vector<Symbol>& symbols, Symbol symbol);

// JSONL row schemas:
//   elements: {"id","predicates":[{"name","signature","gloss"}],"constants":[...],
//              "expressions":[{"raw","parse_ok"}]}
//   analyses: {"id","options":[{"option_index","option_text","preconditions",
//              "deduction_target","steps":[{"step","task","expression","result"}],
//              "is_correct"}],"warnings":[...]}
// Expressions are re-parsed from "raw" on load.
nlohmann::ordered_json elements_to_json(const std::string& id, const LogicalElements& e);
nlohmann::ordered_json analyses_to_json(const std::string& id, const OptionAnalyses& a);

LogicalElements elements_from_json(const nlohmann::json& j, const logic::ParseOptions& options = logic::lenient_options());
OptionAnalyses analyses_from_json(const nlohmann::json& j, const logic::ParseOptions& options = logic::lenient_options());

}  // namespace dri::extract
