#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dri/extract/extractor.hpp"
#include "dri/score/scorer.hpp"

namespace dri::score {

// Extraction outputs of one split directory (elements.jsonl, analyses.jsonl
// and, when present, failures.jsonl). `complete` follows the order of
// elements.jsonl; `missing` lists ids that lack either stage, sorted.
struct SplitExtraction {
  std::vector<extract::ExtractionResult> complete;
  std::vector<std::string> missing;
};

SplitExtraction load_split(const std::filesystem::path& dir,
                           const logic::ParseOptions& options = logic::lenient_options());

nlohmann::ordered_json breakdown_to_json(const DriBreakdown& b);
DriBreakdown breakdown_from_json(const nlohmann::json& j);

nlohmann::ordered_json stats_to_json(const CorpusStats& s);
// Throws InvalidInput on a missing field or an impossible value.
CorpusStats stats_from_json(const nlohmann::json& j);

void write_scores(const std::filesystem::path& path, const std::vector<DriBreakdown>& rows);
std::vector<DriBreakdown> load_scores(const std::filesystem::path& path);

// The (id, s_norm) pairs consumed by analytics and curriculum.
struct ScoredId {
  std::string id;
  double score = 0.0;
};

// Reads any JSONL with "id" and "s_norm" (or "score") fields; ids must be
// unique.
std::vector<ScoredId> load_score_table(const std::filesystem::path& path);

}  // namespace dri::score
