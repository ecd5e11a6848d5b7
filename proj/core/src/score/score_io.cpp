#include "dri/score/score_io.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "dri/common/error.hpp"
#include "dri/common/io.hpp"

namespace dri::score {

namespace {

std::string row_id(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("id")) throw Error(ErrorCode::InvalidInput, "row without \"id\"");
  const auto& id = j["id"];
  if (id.is_string()) return id.get<std::string>();
  if (id.is_number_integer()) return std::to_string(id.get<long long>());
  throw Error(ErrorCode::InvalidInput, "\"id\" must be a string or integer");
}

double number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw Error(ErrorCode::InvalidInput, std::string("missing numeric field \"") + key + "\"");
  return j[key].get<double>();
}

}  // namespace

SplitExtraction load_split(const std::filesystem::path& dir, const logic::ParseOptions& options) {
  std::vector<std::pair<std::string, extract::LogicalElements>> elements;
  std::unordered_map<std::string, extract::OptionAnalyses> analyses;
  std::set<std::string> missing;

  const auto elements_path = dir / "elements.jsonl";
  const auto analyses_path = dir / "analyses.jsonl";
  if (!std::filesystem::exists(elements_path) || !std::filesystem::exists(analyses_path))
    throw Error(ErrorCode::InvalidInput, "no extraction outputs in " + dir.string());

  std::unordered_set<std::string> seen;
  io::for_each_jsonl(elements_path, [&](std::size_t, const nlohmann::json& j) {
    auto id = row_id(j);
    if (!seen.insert(id).second) throw Error(ErrorCode::DuplicateId, "duplicate id " + id);
    elements.emplace_back(std::move(id), extract::elements_from_json(j, options));
  });
  io::for_each_jsonl(analyses_path, [&](std::size_t, const nlohmann::json& j) {
    auto id = row_id(j);
    if (!analyses.emplace(id, extract::analyses_from_json(j, options)).second)
      throw Error(ErrorCode::DuplicateId, "duplicate id " + id);
  });
  if (const auto failures = dir / "failures.jsonl"; std::filesystem::exists(failures))
    io::for_each_jsonl(failures, [&](std::size_t, const nlohmann::json& j) { missing.insert(row_id(j)); });

  SplitExtraction out;
  for (auto& [id, e] : elements) {
    auto it = analyses.find(id);
    if (it == analyses.end()) {
      missing.insert(id);
      continue;
    }
    missing.erase(id);
    out.complete.push_back({id, std::move(e), std::move(it->second)});
    analyses.erase(it);
  }
  for (auto& [id, _] : analyses) missing.insert(id);
  out.missing.assign(missing.begin(), missing.end());
  return out;
}

nlohmann::ordered_json breakdown_to_json(const DriBreakdown& b) {
  nlohmann::ordered_json j;
  j["id"] = b.id;
  j["s_ctx"] = b.s_ctx;
  j["s_opt"] = b.s_opt;
  j["s_raw"] = b.s_raw;
  j["s_norm"] = b.s_norm;
  j["parse_failures"] = b.parse_failures;
  return j;
}

DriBreakdown breakdown_from_json(const nlohmann::json& j) {
  DriBreakdown b;
  b.id = row_id(j);
  b.s_ctx = number(j, "s_ctx");
  b.s_opt = j.at("s_opt").get<std::vector<double>>();
  b.s_raw = number(j, "s_raw");
  b.s_norm = number(j, "s_norm");
  b.parse_failures = j.value("parse_failures", std::size_t{0});
  return b;
}

nlohmann::ordered_json stats_to_json(const CorpusStats& s) {
  nlohmann::ordered_json j;
  j["n"] = s.n;
  j["mu"] = s.mu;
  j["sigma2"] = s.sigma2;
  j["gamma"] = s.gamma;
  j["beta"] = s.beta;
  j["epsilon"] = s.epsilon;
  return j;
}

CorpusStats stats_from_json(const nlohmann::json& j) {
  CorpusStats s;
  if (!j.contains("n") || !j["n"].is_number_unsigned())
    throw Error(ErrorCode::InvalidInput, "stats: \"n\" must be a positive integer");
  s.n = j["n"].get<std::size_t>();
  s.mu = number(j, "mu");
  s.sigma2 = number(j, "sigma2");
  s.gamma = number(j, "gamma");
  s.beta = number(j, "beta");
  s.epsilon = number(j, "epsilon");
  if (s.n < 1 || !(s.sigma2 >= 0) || !(s.epsilon > 0) || !std::isfinite(s.mu))
    throw Error(ErrorCode::InvalidInput, "stats: n >= 1, sigma2 >= 0 and epsilon > 0 required");
  return s;
}

void write_scores(const std::filesystem::path& path, const std::vector<DriBreakdown>& rows) {
  std::vector<nlohmann::ordered_json> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(breakdown_to_json(r));
  io::write_file_atomic(path, io::to_jsonl(out));
}

std::vector<DriBreakdown> load_scores(const std::filesystem::path& path) {
  std::vector<DriBreakdown> rows;
  io::for_each_jsonl(path, [&](std::size_t, const nlohmann::json& j) { rows.push_back(breakdown_from_json(j)); });
  return rows;
}

std::vector<ScoredId> load_score_table(const std::filesystem::path& path) {
  std::vector<ScoredId> rows;
  std::unordered_set<std::string> seen;
  io::for_each_jsonl(path, [&](std::size_t, const nlohmann::json& j) {
    ScoredId r;
    r.id = row_id(j);
    r.score = j.contains("s_norm") ? number(j, "s_norm") : number(j, "score");
    if (!seen.insert(r.id).second) throw Error(ErrorCode::DuplicateId, "duplicate id " + r.id);
    rows.push_back(std::move(r));
  });
  return rows;
}

}  // namespace dri::score
