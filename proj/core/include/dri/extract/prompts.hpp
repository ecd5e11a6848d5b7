#pragma once

#include <string>
#include <string_view>

#include "dri/extract/elements.hpp"
#include "dri/extract/sample.hpp"

namespace dri::extract {

// Prompt templates with `{context}` / `{input_data}` slots.
std::string_view decompose_template() noexcept;
std::string_view analyze_template(SampleKind kind) noexcept;

// Replaces every occurrence of `{slot}`; other braces (LaTeX) are left alone.
std::string fill_slot(std::string_view tmpl, std::string_view slot, std::string_view value);

std::string render_decompose_prompt(const Sample& sample);

// The "Input Data" block for the option-analysis prompt, laid out like the
// worked example of the matching template.
std::string render_input_data(const Sample& sample, const LogicalElements& elements);
std::string render_analyze_prompt(const Sample& sample, const LogicalElements& elements);

}  // namespace dri::extract
