#include "dri/curriculum/manifest.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "dri/common/error.hpp"
#include "dri/common/random.hpp"

namespace dri::curriculum {

namespace {

[[noreturn]] void schema(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::Schema, "manifest field " + field + ": " + why);
}

double score_of(const ScoreTable& scores, const std::string& id) {
  const auto it = scores.find(id);
  if (it == scores.end()) throw Error(ErrorCode::MissingScore, "no score for id " + id);
  return it->second;
}

void require_unique(std::span<const std::string> ids) {
  std::unordered_set<std::string_view> seen;
  for (const auto& id : ids)
    if (!seen.insert(id).second) throw Error(ErrorCode::DuplicateId, "duplicate id " + id);
}

std::vector<std::string> string_list(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array()) schema(field, "must be a list of ids");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) schema(field, "ids must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

ScoreTable make_score_table(std::span<const score::ScoredId> scores) {
  ScoreTable t;
  for (const auto& s : scores)
    if (!t.emplace(s.id, s.score).second) throw Error(ErrorCode::DuplicateId, "duplicate id " + s.id);
  return t;
}

std::string_view to_string(Phase2Mode mode) noexcept {
  return mode == Phase2Mode::Descending ? "descending" : "weighted";
}

Phase2Mode parse_mode(std::string_view name) {
  if (name == "descending") return Phase2Mode::Descending;
  if (name == "weighted") return Phase2Mode::Weighted;
  throw Error(ErrorCode::InvalidParameter, "mode must be descending or weighted");
}

std::vector<std::string> phase1_order(std::vector<std::string> ids, std::uint64_t seed) {
  if (ids.empty()) throw Error(ErrorCode::EmptyCorpus, "no ids to order");
  require_unique(ids);
  Rng rng(seed);
  fisher_yates(std::span<std::string>(ids), rng);
  return ids;
}

std::vector<std::string> phase2_descending(std::span<const std::string> ids, const ScoreTable& scores) {
  require_unique(ids);
  std::vector<std::pair<double, const std::string*>> keyed;
  keyed.reserve(ids.size());
  for (const auto& id : ids) keyed.emplace_back(score_of(scores, id), &id);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return *a.second < *b.second;
  });
  std::vector<std::string> out;
  out.reserve(keyed.size());
  for (const auto& [_, id] : keyed) out.push_back(*id);
  return out;
}

std::vector<double> min_max(std::span<const double> values) {
  std::vector<double> out(values.size(), 0.0);
  if (values.empty()) return out;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  if (!(range > 0)) return out;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - *lo) / range;
  return out;
}

std::vector<std::pair<std::string, double>> phase2_weights(std::span<const std::string> ids, const ScoreTable& scores,
                                                           double min_weight) {
  if (ids.empty()) throw Error(ErrorCode::EmptyCorpus, "no ids to weight");
  require_unique(ids);
  const double n = static_cast<double>(ids.size());
  if (!(min_weight >= 0.0 && min_weight * n <= 1.0))
    throw Error(ErrorCode::InvalidParameter, "min_weight must lie in [0, 1/N]");

  std::vector<double> s;
  s.reserve(ids.size());
  for (const auto& id : ids) s.push_back(score_of(scores, id));
  const auto hat = min_max(s);
  double total = 0.0;
  for (double h : hat) total += h;

  std::vector<std::pair<std::string, double>> out;
  out.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const double p = total > 0 ? hat[i] / total : 1.0 / n;
    out.emplace_back(ids[i], min_weight > 0 ? min_weight + (1.0 - n * min_weight) * p : p);
  }
  return out;
}

CurriculumManifest build_manifest(std::span<const std::string> ids, const ScoreTable& scores, std::size_t epochs,
                                  std::uint64_t seed, Phase2Mode mode, double min_weight) {
  if (epochs < 2) throw Error(ErrorCode::InvalidEpochCount, "a two-phase curriculum needs at least 2 epochs");
  CurriculumManifest m;
  m.seed = seed;
  m.mode = mode;
  m.epochs = epochs;
  m.phase1 = phase1_order(std::vector<std::string>(ids.begin(), ids.end()), seed);
  if (mode == Phase2Mode::Descending) {
    m.phase2_order = phase2_descending(ids, scores);
  } else {
    m.phase2_weights = phase2_weights(ids, scores, min_weight);
    std::sort(m.phase2_weights.begin(), m.phase2_weights.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  return m;
}

nlohmann::ordered_json manifest_to_json(const CurriculumManifest& m) {
  nlohmann::ordered_json j;
  j["version"] = m.version;
  j["seed"] = m.seed;
  j["mode"] = to_string(m.mode);
  j["epochs"] = m.epochs;
  j["phase1"] = m.phase1;
  nlohmann::ordered_json phase2;
  if (m.mode == Phase2Mode::Descending) {
    phase2["order"] = m.phase2_order;
  } else {
    nlohmann::ordered_json weights = nlohmann::ordered_json::object();
    for (const auto& [id, p] : m.phase2_weights) weights[id] = p;
    phase2["weights"] = std::move(weights);
  }
  j["phase2"] = std::move(phase2);
  return j;
}

CurriculumManifest manifest_from_json(const nlohmann::json& j) {
  if (!j.is_object()) schema("(root)", "must be an object");
  CurriculumManifest m;
  if (!j.contains("version") || !j["version"].is_number_integer() || j["version"].get<long long>() != 1)
    schema("version", "unsupported version");
  if (!j.contains("seed") || !j["seed"].is_number_unsigned()) schema("seed", "must be a non-negative integer");
  m.seed = j["seed"].get<std::uint64_t>();
  if (!j.contains("mode") || !j["mode"].is_string()) schema("mode", "must be a string");
  try {
    m.mode = parse_mode(j["mode"].get<std::string>());
  } catch (const Error&) {
    schema("mode", "must be descending or weighted");
  }
  if (!j.contains("epochs") || !j["epochs"].is_number_unsigned() || j["epochs"].get<std::size_t>() < 2)
    schema("epochs", "must be an integer >= 2");
  m.epochs = j["epochs"].get<std::size_t>();
  if (!j.contains("phase1")) schema("phase1", "missing");
  m.phase1 = string_list(j["phase1"], "phase1");
  if (m.phase1.empty()) schema("phase1", "must not be empty");
  std::unordered_set<std::string> ids(m.phase1.begin(), m.phase1.end());
  if (ids.size() != m.phase1.size()) schema("phase1", "repeats an id");

  if (!j.contains("phase2") || !j["phase2"].is_object()) schema("phase2", "must be an object");
  const auto& p2 = j["phase2"];
  if (m.mode == Phase2Mode::Descending) {
    if (!p2.contains("order")) schema("phase2.order", "missing");
    m.phase2_order = string_list(p2["order"], "phase2.order");
    std::unordered_set<std::string> order(m.phase2_order.begin(), m.phase2_order.end());
    if (order.size() != m.phase2_order.size() || order != ids)
      schema("phase2.order", "must be a permutation of phase1");
  } else {
    if (!p2.contains("weights") || !p2["weights"].is_object()) schema("phase2.weights", "must be an object");
    double total = 0.0;
    for (auto it = p2["weights"].begin(); it != p2["weights"].end(); ++it) {
      if (!it.value().is_number() || !(it.value().get<double>() >= 0.0))
        schema("phase2.weights." + it.key(), "must be a probability >= 0");
      if (!ids.contains(it.key())) schema("phase2.weights." + it.key(), "id not in phase1");
      m.phase2_weights.emplace_back(it.key(), it.value().get<double>());
      total += it.value().get<double>();
    }
    if (m.phase2_weights.size() != ids.size()) schema("phase2.weights", "must cover every phase1 id");
    if (std::abs(total - 1.0) > 1e-9) schema("phase2.weights", "must sum to 1");
  }
  return m;
}

}  // namespace dri::curriculum
