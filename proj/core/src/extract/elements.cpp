#include "dri/extract/elements.hpp"

#include <algorithm>

#include "dri/common/error.hpp"

namespace dri::extract {

namespace {

nlohmann::ordered_json expression_json(const Expression& e) {
  nlohmann::ordered_json j;
  j["raw"] = e.raw;
  j["parse_ok"] = e.parse_ok();
  return j;
}

Expression expression_from(const nlohmann::json& j, const logic::ParseOptions& options) {
  if (j.is_string()) return make_expression(j.get<std::string>(), options);
  if (!j.is_object() || !j.contains("raw") || !j["raw"].is_string())
    throw Error(ErrorCode::InvalidInput, "expression entry needs a \"raw\" string");
  return make_expression(j["raw"].get<std::string>(), options);
}

nlohmann::ordered_json symbol_json(const Symbol& s, bool with_signature) {
  nlohmann::ordered_json j;
  j["name"] = s.name;
  if (with_signature) j["signature"] = s.signature;
  j["gloss"] = s.gloss;
  return j;
}

Symbol symbol_from(const nlohmann::json& j) {
  Symbol s;
  s.name = j.at("name").get<std::string>();
  s.signature = j.value("signature", s.name);
  s.gloss = j.value("gloss", std::string{});
  return s;
}

const nlohmann::json& array_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    throw Error(ErrorCode::InvalidInput, std::string("missing array field \"") + key + "\"");
  return j[key];
}

}  // namespace

Expression make_expression(std::string raw, const logic::ParseOptions& options) {
  logic::Formula f = logic::parse_formula(raw, options);
  return Expression{std::move(raw), std::move(f)};
}

std::size_t LogicalElements::parse_failures() const noexcept {
  return static_cast<std::size_t>(std::count_if(expressions.begin(), expressions.end(),
                                                [](const Expression& e) { return !e.parse_ok(); }));
}

std::size_t OptionAnalysis::parse_failures() const noexcept {
  std::size_t n = 0;
  for (const auto& p : preconditions) n += p.parse_ok() ? 0 : 1;
  for (const auto& s : steps) n += s.expression.parse_ok() ? 0 : 1;
  return n;
}

void add_unique(std::vector<Symbol>& symbols, Symbol symbol) {
  const bool present = std::any_of(symbols.begin(), symbols.end(),
                                   [&](const Symbol& s) { return s.name == symbol.name; });
  if (!present) symbols.push_back(std::move(symbol));
}

nlohmann::ordered_json elements_to_json(const std::string& id, const LogicalElements& e) {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["predicates"] = nlohmann::ordered_json::array();
  for (const auto& p : e.predicates) j["predicates"].push_back(symbol_json(p, true));
  j["constants"] = nlohmann::ordered_json::array();
  for (const auto& c : e.constants) j["constants"].push_back(symbol_json(c, false));
  j["expressions"] = nlohmann::ordered_json::array();
  for (const auto& x : e.expressions) j["expressions"].push_back(expression_json(x));
  return j;
}

nlohmann::ordered_json analyses_to_json(const std::string& id, const OptionAnalyses& a) {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["options"] = nlohmann::ordered_json::array();
  for (const auto& o : a.options) {
    nlohmann::ordered_json oj;
    oj["option_index"] = o.option_index;
    oj["option_text"] = o.option_text;
    oj["preconditions"] = nlohmann::ordered_json::array();
    for (const auto& p : o.preconditions) oj["preconditions"].push_back(expression_json(p));
    oj["deduction_target"] = expression_json(o.deduction_target);
    oj["steps"] = nlohmann::ordered_json::array();
    for (const auto& s : o.steps) {
      nlohmann::ordered_json sj;
      sj["step"] = s.step;
      sj["task"] = s.task;
      sj["expression"] = expression_json(s.expression);
      sj["result"] = s.result;
      oj["steps"].push_back(std::move(sj));
    }
    oj["is_correct"] = o.is_correct;
    j["options"].push_back(std::move(oj));
  }
  j["warnings"] = a.warnings;
  return j;
}

LogicalElements elements_from_json(const nlohmann::json& j, const logic::ParseOptions& options) {
  LogicalElements e;
  for (const auto& p : array_field(j, "predicates")) add_unique(e.predicates, symbol_from(p));
  for (const auto& c : array_field(j, "constants")) add_unique(e.constants, symbol_from(c));
  for (const auto& x : array_field(j, "expressions")) e.expressions.push_back(expression_from(x, options));
  return e;
}

OptionAnalyses analyses_from_json(const nlohmann::json& j, const logic::ParseOptions& options) {
  OptionAnalyses a;
  for (const auto& oj : array_field(j, "options")) {
    OptionAnalysis o;
    o.option_index = oj.at("option_index").get<std::size_t>();
    o.option_text = oj.value("option_text", std::string{});
    for (const auto& p : array_field(oj, "preconditions")) o.preconditions.push_back(expression_from(p, options));
    o.deduction_target = oj.contains("deduction_target") ? expression_from(oj["deduction_target"], options)
                                                         : make_expression("", options);
    for (const auto& sj : array_field(oj, "steps")) {
      ReasoningStep s;
      s.step = sj.at("step").get<std::size_t>();
      s.task = sj.value("task", std::string{});
      s.expression = expression_from(sj.at("expression"), options);
      s.result = sj.value("result", std::string{});
      o.steps.push_back(std::move(s));
    }
    o.is_correct = oj.at("is_correct").get<bool>();
    a.options.push_back(std::move(o));
  }
  if (j.contains("warnings") && j["warnings"].is_array())
    for (const auto& w : j["warnings"]) a.warnings.push_back(w.get<std::string>());
  return a;
}

}  // namespace dri::extract
