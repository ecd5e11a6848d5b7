#include "dri/extract/json_repair.hpp"

#include <array>
#include <cctype>
#include <optional>

namespace dri::extract {

namespace {

std::string_view strip_fences(std::string_view s) {
  const auto open = s.find("```");
  if (open == std::string_view::npos) return s;
  auto body_start = s.find('\n', open);
  if (body_start == std::string_view::npos) return s.substr(open + 3);
  ++body_start;
  const auto close = s.find("```", body_start);
  return s.substr(body_start, close == std::string_view::npos ? std::string_view::npos : close - body_start);
}

// Outermost {...} or [...] starting at the first opener, honouring quotes.
std::optional<std::string_view> outermost_value(std::string_view s) {
  const auto start = s.find_first_of("{[");
  if (start == std::string_view::npos) return std::nullopt;
  std::string stack;
  char quote = 0;
  for (std::size_t i = start; i < s.size(); ++i) {
    const char c = s[i];
    if (quote) {
      if (c == '\\') {
        ++i;
      } else if (c == quote) {
        quote = 0;
      }
      continue;
    }
    if (c == '"') {
      quote = c;
    } else if (c == '\'' && i > start && std::string_view("{[,:").find(s[s.find_last_not_of(" \t\r\n", i - 1)]) != std::string_view::npos) {
      quote = c;
    } else if (c == '{' || c == '[') {
      stack.push_back(c == '{' ? '}' : ']');
    } else if (c == '}' || c == ']') {
      if (stack.empty() || stack.back() != c) return std::nullopt;
      stack.pop_back();
      if (stack.empty()) return s.substr(start, i - start + 1);
    }
  }
  return std::nullopt;
}

constexpr std::array<std::string_view, 30> kLatexNames{
    "text", "textrm", "textit", "textbf", "mathrm", "mathit", "mathbf", "operatorname",
    "neg", "lnot", "land", "lor", "wedge", "vee", "forall", "exists",
    "Rightarrow", "rightarrow", "Leftrightarrow", "leftrightarrow", "implies", "iff", "to",
    "neq", "leq", "geq", "left", "right", "quad", "ne"};

bool latex_command_at(std::string_view s, std::size_t i) {
  for (auto name : kLatexNames) {
    if (s.substr(i).starts_with(name)) {
      const auto end = i + name.size();
      if (end >= s.size() || !std::isalpha(static_cast<unsigned char>(s[end]))) return true;
    }
  }
  return false;
}

// One pass over the candidate text that rewrites quoting and escaping
// problems. Only touches characters outside double-quoted strings, except for
// backslashes inside strings.
std::string normalize(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 16);
  char quote = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (quote) {
      if (c == '\\') {
        const char next = i + 1 < s.size() ? s[i + 1] : '\0';
        if (next == '\\') {
          out += "\\\\";
          ++i;
        } else if (latex_command_at(s, i + 1) ||
                   std::string_view("\"/bfnrtu'").find(next) == std::string_view::npos || next == '\0') {
          out += "\\\\";
        } else if (next == '\'') {
          out += '\'';
          ++i;
        } else {
          out += c;
          out += next;
          ++i;
        }
      } else if (c == quote) {
        out += '"';
        quote = 0;
      } else if (c == '"' && quote == '\'') {
        out += "\\\"";
      } else if (c == '\n') {
        out += "\\n";
      } else if (c == '\t') {
        out += "\\t";
      } else if (c == '\r') {
        continue;
      } else {
        out += c;
      }
      continue;
    }
    if (c == '"' || c == '\'') {
      quote = c;
      out += '"';
      continue;
    }
    if (c == ',') {
      const auto next = s.find_first_not_of(" \t\r\n", i + 1);
      if (next != std::string_view::npos && (s[next] == '}' || s[next] == ']')) continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) &&
        (out.empty() || !std::isalnum(static_cast<unsigned char>(out.back())))) {
      auto word_end = i;
      while (word_end < s.size() && std::isalpha(static_cast<unsigned char>(s[word_end]))) ++word_end;
      const auto word = s.substr(i, word_end - i);
      if (word == "True" || word == "False" || word == "None") {
        out += word == "True" ? "true" : word == "False" ? "false" : "null";
        i = word_end - 1;
        continue;
      }
    }
    out += c;
  }
  return out;
}

std::optional<nlohmann::json> try_parse(std::string_view s) {
  auto v = nlohmann::json::parse(s, nullptr, /*allow_exceptions=*/false);
  if (v.is_discarded()) return std::nullopt;
  return v;
}

}  // namespace

nlohmann::json repair_json(std::string_view raw) {
  const auto body = strip_fences(raw);
  const auto candidate = outermost_value(body);
  if (!candidate) throw UnrepairableResponse(std::string(raw), "no bracketed value");
  if (auto v = try_parse(normalize(*candidate))) return *v;
  if (auto v = try_parse(*candidate)) return *v;
  throw UnrepairableResponse(std::string(raw), "bracketed value is not valid JSON after repair");
}

}  // namespace dri::extract
