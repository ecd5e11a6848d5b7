#include "dri/extract/sample.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "dri/common/error.hpp"
#include "dri/common/io.hpp"

namespace dri::extract {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::InvalidInput, msg); }

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string text_field(const nlohmann::json& j, const char* key, bool required) {
  if (!j.contains(key) || j[key].is_null()) {
    if (required) bad(std::string("missing field \"") + key + "\"");
    return {};
  }
  if (!j[key].is_string()) bad(std::string("field \"") + key + "\" must be a string");
  return j[key].get<std::string>();
}

std::size_t mcqa_answer(const nlohmann::json& a) {
  if (a.is_number_integer()) {
    const auto v = a.get<long long>();
    if (v < 0) bad("answer must be nonnegative");
    return static_cast<std::size_t>(v);
  }
  if (a.is_string()) {
    const std::string s = trim(a.get<std::string>());
    if (!s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
      return std::stoul(s);
    if (s.size() == 1 && std::isalpha(static_cast<unsigned char>(s[0])))
      return static_cast<std::size_t>(std::toupper(static_cast<unsigned char>(s[0])) - 'A');
  }
  bad("MCQA answer must be an option index or letter");
}

bool bqa_answer(const nlohmann::json& a) {
  if (a.is_boolean()) return a.get<bool>();
  if (a.is_string()) {
    const std::string s = lower(trim(a.get<std::string>()));
    if (s == "yes" || s == "true") return true;
    if (s == "no" || s == "false") return false;
  }
  bad("BQA answer must be yes or no");
}

}  // namespace

bool Sample::is_correct_option(std::size_t index) const noexcept {
  if (kind == SampleKind::Bqa) return index == 0 && bqa_yes;
  return index == answer;
}

Sample sample_from_json(const nlohmann::json& j) {
  if (!j.is_object()) bad("sample must be a JSON object");
  Sample s;
  if (!j.contains("id")) bad("missing field \"id\"");
  if (j["id"].is_string())
    s.id = j["id"].get<std::string>();
  else if (j["id"].is_number_integer())
    s.id = std::to_string(j["id"].get<long long>());
  else
    bad("field \"id\" must be a string");
  if (s.id.empty()) bad("empty sample id");
  s.context = text_field(j, "context", true);
  s.question = text_field(j, "question", false);

  const std::string kind = lower(text_field(j, "kind", true));
  if (kind == "bqa") {
    s.kind = SampleKind::Bqa;
  } else if (kind == "mcqa") {
    s.kind = SampleKind::Mcqa;
  } else {
    bad("kind must be BQA or MCQA");
  }

  if (j.contains("options") && !j["options"].is_null()) {
    if (!j["options"].is_array()) bad("options must be an array");
    for (const auto& o : j["options"]) {
      if (!o.is_string()) bad("options must be strings");
      s.options.push_back(o.get<std::string>());
    }
  }
  if (!j.contains("answer")) bad("missing field \"answer\"");

  if (s.kind == SampleKind::Bqa) {
    if (s.options.empty()) {
      if (s.question.empty()) bad("BQA sample needs a question or a single option");
      s.options.push_back(s.question);
    }
    if (s.options.size() != 1) bad("BQA sample must have exactly one option");
    s.bqa_yes = bqa_answer(j["answer"]);
    s.answer = 0;
  } else {
    if (s.options.size() < 2 || s.options.size() > kMaxMcqaOptions)
      bad("MCQA sample must have between 2 and 8 options");
    s.answer = mcqa_answer(j["answer"]);
    if (s.answer >= s.options.size()) bad("answer index out of range");
  }
  return s;
}

nlohmann::ordered_json sample_to_json(const Sample& s) {
  nlohmann::ordered_json j;
  j["id"] = s.id;
  j["context"] = s.context;
  j["question"] = s.question;
  j["options"] = s.options;
  if (s.kind == SampleKind::Bqa)
    j["answer"] = s.bqa_yes ? "yes" : "no";
  else
    j["answer"] = s.answer;
  j["kind"] = s.kind == SampleKind::Bqa ? "BQA" : "MCQA";
  return j;
}

std::vector<Sample> load_samples(const std::filesystem::path& path) {
  std::vector<Sample> samples;
  std::unordered_set<std::string> seen;
  io::for_each_jsonl(path, [&](std::size_t, const nlohmann::json& row) {
    Sample s = sample_from_json(row);
    if (!seen.insert(s.id).second) throw Error(ErrorCode::DuplicateId, "duplicate sample id " + s.id);
    samples.push_back(std::move(s));
  });
  return samples;
}

}  // namespace dri::extract
