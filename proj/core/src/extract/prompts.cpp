#include "dri/extract/prompts.hpp"

#include "extract/prompt_assets.hpp"

namespace dri::extract {

std::string_view decompose_template() noexcept { return assets::kDecompose; }

std::string_view analyze_template(SampleKind kind) noexcept {
  return kind == SampleKind::Bqa ? assets::kAnalyzeBqa : assets::kAnalyzeMcqa;
}

std::string fill_slot(std::string_view tmpl, std::string_view slot, std::string_view value) {
  const std::string marker = "{" + std::string(slot) + "}";
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const auto hit = tmpl.find(marker, pos);
    if (hit == std::string_view::npos) break;
    out.append(tmpl.substr(pos, hit - pos));
    out.append(value);
    pos = hit + marker.size();
  }
  out.append(tmpl.substr(pos));
  return out;
}

std::string render_decompose_prompt(const Sample& sample) {
  return fill_slot(decompose_template(), "context", sample.context);
}

namespace {

void symbol_lines(std::string& out, const std::vector<Symbol>& symbols, std::string_view indent) {
  for (const auto& s : symbols) {
    out += indent;
    out += "- ";
    out += s.signature.empty() ? s.name : s.signature;
    if (!s.gloss.empty()) {
      out += ": ";
      out += s.gloss;
    }
    out += "\n";
  }
}

void expression_lines(std::string& out, const std::vector<Expression>& exprs, std::string_view indent) {
  for (const auto& e : exprs) {
    out += indent;
    out += "- ";
    out += e.raw;
    out += "\n";
  }
}

}  // namespace

std::string render_input_data(const Sample& s, const LogicalElements& e) {
  std::string out;
  if (s.kind == SampleKind::Bqa) {
    out += "- context: " + s.context + "\n\n";
    out += "- question: " + s.question + "\n\n";
    out += "- options: " + s.options.front() + "\n\n";
    out += std::string("- answer: ") + (s.bqa_yes ? "yes" : "no") + "\n\n";
    out += "- Predicates:\n\n";
    symbol_lines(out, e.predicates, "  ");
    out += "\n- Constants:\n\n";
    symbol_lines(out, e.constants, "  ");
    out += "\n- Logical Expressions:\n\n";
    expression_lines(out, e.expressions, "  ");
    return out;
  }
  out += "- **Context**: " + s.context + "\n";
  out += "- **Question**: " + s.question + "\n\n";
  out += "- **Options**:\n";
  for (std::size_t i = 0; i < s.options.size(); ++i)
    out += "  " + std::to_string(i + 1) + ". " + s.options[i] + "\n";
  out += "\n- **Answer**: " + std::to_string(s.answer) + "\n\n";
  out += "- **Predicates**:\n";
  symbol_lines(out, e.predicates, "  ");
  out += "\n- **Constants**:\n";
  symbol_lines(out, e.constants, "  ");
  out += "\n- **Logical Expressions**:\n";
  expression_lines(out, e.expressions, "  ");
  return out;
}

std::string render_analyze_prompt(const Sample& sample, const LogicalElements& elements) {
  return fill_slot(analyze_template(sample.kind), "input_data", render_input_data(sample, elements));
}

}  // namespace dri::extract
