#include "dri/extract/response_parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <regex>
#include <string>

#include "dri/extract/json_repair.hpp"

namespace dri::extract {

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::Schema, msg); }

std::string norm_key(std::string_view k) {
  std::string out;
  for (char c : k)
    if (std::isalnum(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

const nlohmann::json* find_key(const nlohmann::json& obj, std::initializer_list<std::string_view> names) {
  if (!obj.is_object()) return nullptr;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const auto k = norm_key(it.key());
    for (auto n : names)
      if (k == n) return &it.value();
  }
  return nullptr;
}

std::string trim(std::string_view s, std::string_view chars = " \t\r\n") {
  const auto first = s.find_first_not_of(chars);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(chars);
  return std::string(s.substr(first, last - first + 1));
}

std::string as_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return {};
  return v.dump();
}

// "`Sig`: gloss", "\( Sig \): gloss", or "Sig: gloss".
std::pair<std::string, std::string> split_signature(std::string_view item) {
  std::string s = trim(item);
  if (s.starts_with("`")) {
    const auto close = s.find('`', 1);
    if (close != std::string::npos)
      return {s.substr(1, close - 1), trim(std::string_view(s).substr(close + 1), " \t\r\n:,-")};
  }
  if (s.starts_with("\\(")) {
    const auto close = s.find("\\)");
    if (close != std::string::npos)
      return {s.substr(0, close + 2), trim(std::string_view(s).substr(close + 2), " \t\r\n:,-")};
  }
  const auto colon = s.find(": ");
  if (colon != std::string::npos) return {trim(s.substr(0, colon)), trim(s.substr(colon + 2))};
  return {s, {}};
}

Symbol make_symbol(std::string signature, std::string gloss) {
  Symbol sym;
  sym.signature = trim(signature, " \t\r\n`");
  sym.gloss = trim(gloss, " \t\r\n,");
  const auto f = logic::parse_formula(sym.signature, logic::lenient_options());
  if (const auto* a = std::get_if<logic::Formula::Atom>(&f.node))
    sym.name = a->predicate;
  else
    sym.name = sym.signature;
  return sym;
}

Symbol symbol_from(const nlohmann::json& item) {
  if (item.is_string()) {
    auto [sig, gloss] = split_signature(item.get<std::string>());
    return make_symbol(std::move(sig), std::move(gloss));
  }
  if (item.is_object()) {
    if (const auto* n = find_key(item, {"name", "signature", "predicate", "constant", "symbol"})) {
      const auto* g = find_key(item, {"gloss", "description", "meaning", "explanation", "definition"});
      return make_symbol(as_text(*n), g ? as_text(*g) : std::string{});
    }
    if (item.size() == 1) return make_symbol(item.begin().key(), as_text(item.begin().value()));
  }
  schema("unrecognised predicate/constant entry: " + item.dump());
}

std::vector<Symbol> symbols_from(const nlohmann::json& v, const char* what) {
  std::vector<Symbol> out;
  if (v.is_array()) {
    for (const auto& item : v) {
      Symbol s = symbol_from(item);
      if (!s.name.empty()) add_unique(out, std::move(s));
    }
  } else if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) add_unique(out, make_symbol(it.key(), as_text(it.value())));
  } else {
    schema(std::string(what) + " must be a list");
  }
  return out;
}

std::string expression_text(const nlohmann::json& item) {
  if (item.is_string()) return item.get<std::string>();
  if (const auto* e = find_key(item, {"expression", "raw", "formula", "text"})) return as_text(*e);
  schema("unrecognised expression entry: " + item.dump());
}

// --- text layout --------------------------------------------------------

struct Section {
  std::string name;
  std::string body;
};

std::vector<Section> split_sections(std::string_view raw) {
  static const std::regex header(R"((?:\*\*)?[ \t]*(Predicates|Constants|Logical Expressions)[ \t]*(?:\*\*)?[ \t]*:)",
                                 std::regex::icase);
  std::vector<Section> out;
  const std::string text(raw);
  std::vector<std::pair<std::size_t, std::size_t>> hits;  // (match start, body start)
  std::vector<std::string> names;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), header); it != std::sregex_iterator(); ++it) {
    hits.emplace_back(static_cast<std::size_t>(it->position()),
                      static_cast<std::size_t>(it->position() + it->length()));
    names.push_back(norm_key((*it)[1].str()));
  }
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const auto end = i + 1 < hits.size() ? hits[i + 1].first : text.size();
    std::string body = text.substr(hits[i].second, end - hits[i].second);
    // A horizontal rule ends the listing.
    if (const auto rule = body.find("\n---"); rule != std::string::npos) body.resize(rule);
    out.push_back({names[i], std::move(body)});
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> section_symbols(const std::string& body) {
  std::vector<std::pair<std::string, std::string>> out;
  if (body.find('`') != std::string::npos) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
      const auto tick = body.find('`', pos);
      parts.push_back(body.substr(pos, tick == std::string::npos ? std::string::npos : tick - pos));
      if (tick == std::string::npos) break;
      pos = tick + 1;
    }
    for (std::size_t i = 1; i < parts.size(); i += 2) {
      std::string gloss = i + 1 < parts.size() ? trim(parts[i + 1], " \t\r\n:,[]") : std::string{};
      out.emplace_back(parts[i], std::move(gloss));
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos < body.size()) {
    auto nl = body.find('\n', pos);
    if (nl == std::string::npos) nl = body.size();
    std::string line = trim(std::string_view(body).substr(pos, nl - pos), " \t\r\n-*[],");
    pos = nl + 1;
    if (line.empty()) continue;
    auto [sig, gloss] = split_signature(line);
    out.emplace_back(std::move(sig), std::move(gloss));
  }
  return out;
}

// Trims list punctuation, keeping brackets that balance inside the item.
std::string trim_item(std::string_view s) {
  std::string out = trim(s, " \t\r\n,-*");
  while (!out.empty()) {
    const auto opens = std::count(out.begin(), out.end(), '[');
    const auto closes = std::count(out.begin(), out.end(), ']');
    if (out.front() == '[' && opens > closes) {
      out = trim(std::string_view(out).substr(1), " \t\r\n,-*");
    } else if (out.back() == ']' && closes > opens) {
      out.pop_back();
      out = trim(out, " \t\r\n,-*");
    } else {
      break;
    }
  }
  // An empty listing such as `[]`.
  if (out.find_first_not_of("[] \t\r\n,") == std::string::npos) return {};
  return out;
}

std::vector<std::string> section_expressions(const std::string& body) {
  std::vector<std::string> out;
  const bool ticks = body.find('`') != std::string::npos;
  const char sep = ticks ? '`' : '\n';
  std::size_t pos = 0;
  while (pos <= body.size()) {
    auto next = body.find(sep, pos);
    if (next == std::string::npos) next = body.size();
    std::string item = trim_item(std::string_view(body).substr(pos, next - pos));
    if (!item.empty()) out.push_back(std::move(item));
    pos = next + 1;
  }
  return out;
}

std::optional<nlohmann::json> from_sections(std::string_view raw) {
  const auto sections = split_sections(raw);
  nlohmann::json value = nlohmann::json::object();
  for (const auto& s : sections) {
    if (s.name == "logicalexpressions") {
      value["Logical Expressions"] = section_expressions(s.body);
    } else {
      auto& list = value[s.name == "predicates" ? "Predicates" : "Constants"];
      list = nlohmann::json::array();
      for (auto& [sig, gloss] : section_symbols(s.body))
        list.push_back({{"signature", sig}, {"gloss", gloss}});
    }
  }
  if (!value.contains("Predicates") || !value.contains("Constants") || !value.contains("Logical Expressions"))
    return std::nullopt;
  return value;
}

bool has_decomposition_keys(const nlohmann::json& v) {
  return find_key(v, {"predicates"}) && find_key(v, {"constants"}) &&
         find_key(v, {"logicalexpressions", "expressions", "logicexpressions"});
}

std::optional<bool> truth(const nlohmann::json& v) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    std::string s = norm_key(v.get<std::string>());
    if (s == "true" || s == "yes") return true;
    if (s == "false" || s == "no") return false;
  }
  if (v.is_number_integer()) return v.get<long long>() != 0;
  return std::nullopt;
}

std::optional<std::size_t> index_of(const nlohmann::json& v) {
  if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::size_t>(v.get<long long>());
  if (v.is_string()) {
    const std::string s = trim(v.get<std::string>());
    if (!s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
      return std::stoul(s);
  }
  return std::nullopt;
}

}  // namespace

nlohmann::json decomposition_value(std::string_view raw) {
  try {
    auto v = repair_json(raw);
    if (has_decomposition_keys(v)) return v;
  } catch (const UnrepairableResponse&) {
    // fall through to the sectioned text layout
  }
  if (auto v = from_sections(raw)) return *v;
  throw UnrepairableResponse(std::string(raw), "no Predicates/Constants/Logical Expressions lists found");
}

nlohmann::json analysis_value(std::string_view raw) { return repair_json(raw); }

LogicalElements elements_from_value(const nlohmann::json& value, const logic::ParseOptions& options) {
  const auto* preds = find_key(value, {"predicates"});
  const auto* consts = find_key(value, {"constants"});
  const auto* exprs = find_key(value, {"logicalexpressions", "expressions", "logicexpressions"});
  if (!preds || !consts || !exprs) schema("decomposition needs Predicates, Constants and Logical Expressions");
  LogicalElements e;
  e.predicates = symbols_from(*preds, "Predicates");
  e.constants = symbols_from(*consts, "Constants");
  if (!exprs->is_array()) schema("Logical Expressions must be a list");
  for (const auto& item : *exprs) {
    std::string text = trim(expression_text(item));
    if (text.empty()) continue;
    e.expressions.push_back(make_expression(std::move(text), options));
  }
  return e;
}

OptionAnalyses analyses_from_value(const nlohmann::json& value, const Sample& sample,
                                   const logic::ParseOptions& options) {
  const nlohmann::json* list = nullptr;
  nlohmann::json single;
  if (value.is_array()) {
    list = &value;
  } else if (const auto* oa = find_key(value, {"optionanalysis", "optionanalyses", "options", "analysis"})) {
    list = oa;
  } else if (value.is_object() && find_key(value, {"optionindex"})) {
    single = nlohmann::json::array({value});
    list = &single;
  }
  if (!list || !list->is_array()) schema("reply has no option_analysis list");

  const std::size_t expected = sample.option_count();
  if (list->size() != expected)
    schema("expected " + std::to_string(expected) + " option analyses, got " + std::to_string(list->size()));

  OptionAnalyses out;
  std::vector<bool> seen(expected, false);
  std::size_t position = 0;
  for (const auto& item : *list) {
    if (!item.is_object()) schema("option analysis must be an object");
    OptionAnalysis a;
    const auto* idx = find_key(item, {"optionindex", "index"});
    const auto parsed_index = idx ? index_of(*idx) : std::optional<std::size_t>(position);
    if (!parsed_index || *parsed_index >= expected || seen[*parsed_index])
      schema("option_index missing, out of range, or repeated at position " + std::to_string(position));
    a.option_index = *parsed_index;
    seen[a.option_index] = true;
    ++position;

    const auto* text = find_key(item, {"optiontext", "text"});
    a.option_text = text ? as_text(*text) : sample.options[a.option_index];

    if (const auto* pre = find_key(item, {"preconditions", "precondition"})) {
      if (pre->is_array()) {
        for (const auto& p : *pre) {
          std::string t = trim(expression_text(p));
          if (!t.empty()) a.preconditions.push_back(make_expression(std::move(t), options));
        }
      } else if (pre->is_string() && !trim(pre->get<std::string>()).empty()) {
        a.preconditions.push_back(make_expression(trim(pre->get<std::string>()), options));
      }
    }

    const auto* target = find_key(item, {"deductiontarget", "target"});
    a.deduction_target = make_expression(target ? trim(as_text(*target)) : std::string{}, options);

    bool renumbered = false;
    if (const auto* steps = find_key(item, {"deductionsteps", "steps"}); steps && steps->is_array()) {
      for (const auto& sj : *steps) {
        ReasoningStep step;
        step.step = a.steps.size() + 1;
        if (sj.is_object()) {
          if (const auto* n = find_key(sj, {"step", "stepnumber"}); n) {
            const auto given = index_of(*n);
            if (!given || *given != step.step) renumbered = true;
          }
          if (const auto* t = find_key(sj, {"task"})) step.task = as_text(*t);
          const auto* ex = find_key(sj, {"expression", "formula"});
          step.expression = make_expression(ex ? trim(as_text(*ex)) : std::string{}, options);
          if (const auto* r = find_key(sj, {"result", "outcome"})) step.result = as_text(*r);
        } else {
          step.expression = make_expression(trim(as_text(sj)), options);
        }
        a.steps.push_back(std::move(step));
      }
    }
    if (renumbered)
      out.warnings.push_back("StepRenumbered: option " + std::to_string(a.option_index));

    const bool gold = sample.is_correct_option(a.option_index);
    const auto* ic = find_key(item, {"iscorrect", "correct"});
    const auto model_says = ic ? truth(*ic) : std::nullopt;
    if (!model_says) {
      out.warnings.push_back("AnswerMismatch: option " + std::to_string(a.option_index) +
                             " has no usable is_correct; gold answer used");
    } else if (*model_says != gold) {
      out.warnings.push_back("AnswerMismatch: option " + std::to_string(a.option_index) + " model=" +
                             (*model_says ? "true" : "false") + " gold=" + (gold ? "true" : "false"));
    }
    a.is_correct = gold;
    out.options.push_back(std::move(a));
  }
  std::sort(out.options.begin(), out.options.end(),
            [](const OptionAnalysis& x, const OptionAnalysis& y) { return x.option_index < y.option_index; });
  return out;
}

}  // namespace dri::extract
