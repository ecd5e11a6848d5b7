#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dri/score/score_io.hpp"

namespace dri::curriculum {

using ScoreTable = std::unordered_map<std::string, double>;

// Throws DuplicateId.
ScoreTable make_score_table(std::span<const score::ScoredId> scores);

enum class Phase2Mode { Descending, Weighted };
std::string_view to_string(Phase2Mode mode) noexcept;
Phase2Mode parse_mode(std::string_view name);

// Seeded Fisher-Yates permutation. Throws DuplicateId, EmptyCorpus.
std::vector<std::string> phase1_order(std::vector<std::string> ids, std::uint64_t seed);

// By score descending, ties by id ascending. Throws MissingScore.
std::vector<std::string> phase2_descending(std::span<const std::string> ids, const ScoreTable& scores);

// (s − min)/(max − min); all zeros when every value is equal.
std::vector<double> min_max(std::span<const double> values);

// p_i = ŝ_i / Σ ŝ, uniform when the scores are all equal. `min_weight`
// mixes in a uniform floor, p' = m + (1 − N·m)·p, so every p' >= m; it must
// lie in [0, 1/N]. Result follows the order of `ids`. Throws MissingScore,
// InvalidParameter.
std::vector<std::pair<std::string, double>> phase2_weights(std::span<const std::string> ids, const ScoreTable& scores,
                                                           double min_weight = 0.0);

struct CurriculumManifest {
  int version = 1;
  std::uint64_t seed = 0;
  Phase2Mode mode = Phase2Mode::Descending;
  std::size_t epochs = 2;
  std::vector<std::string> phase1;
  std::vector<std::string> phase2_order;                      // descending mode
  std::vector<std::pair<std::string, double>> phase2_weights;  // weighted mode, sorted by id
};

// Throws InvalidEpochCount when epochs < 2.
CurriculumManifest build_manifest(std::span<const std::string> ids, const ScoreTable& scores, std::size_t epochs,
                                  std::uint64_t seed, Phase2Mode mode, double min_weight = 0.0);

// {"version":1,"seed","mode","epochs","phase1":[...],
//  "phase2":{"order":[...]} | {"weights":{id: p}}}
nlohmann::ordered_json manifest_to_json(const CurriculumManifest& m);

// Validates against the schema above; violations throw Error(Schema) naming
// the offending field path (e.g. "phase2.weights").
CurriculumManifest manifest_from_json(const nlohmann::json& j);

}  // namespace dri::curriculum
