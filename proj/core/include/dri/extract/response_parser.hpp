#pragma once

#include <string_view>

#include <nlohmann/json.hpp>

#include "dri/extract/elements.hpp"
#include "dri/extract/sample.hpp"
#include "dri/logic/parser.hpp"

namespace dri::extract {

// Structured value of a decomposition reply. Accepts a JSON object (after
// repair) or the "Predicates: [...] Constants: [...] Logical Expressions:
// [...]" layout of the prompt's own example. Throws UnrepairableResponse.
nlohmann::json decomposition_value(std::string_view raw);

// Structured value of an option-analysis reply (repair_json).
nlohmann::json analysis_value(std::string_view raw);

// Schema mapping. Both throw Error(Schema) when the value does not have the
// expected shape; expression strings are parsed with `options`.
LogicalElements elements_from_value(const nlohmann::json& value,
                                    const logic::ParseOptions& options = logic::lenient_options());

// One analysis per option, ordered by option index. The sample's gold answer
// overrides the model's is_correct; disagreements and step renumbering are
// reported as warnings.
OptionAnalyses analyses_from_value(const nlohmann::json& value, const Sample& sample,
                                   const logic::ParseOptions& options = logic::lenient_options());

}  // namespace dri::extract
