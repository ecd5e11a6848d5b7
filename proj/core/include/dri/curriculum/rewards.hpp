#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dri/score/score_io.hpp"

namespace dri::curriculum {

struct RewardSpec {
  double base_reward = 1.0;
  double lambda = 1.0;
  double format_reward = 0.0;
  std::vector<std::pair<std::string, double>> rewards;  // sorted by id
};

// r_i = base·(1 + λ·ŝ_i), ŝ the min-max normalised score (0 for every id
// when all scores are equal). Throws InvalidParameter unless base > 0,
// λ >= 0 and format_reward is finite; DuplicateId; EmptyCorpus.
RewardSpec reward_spec(std::span<const score::ScoredId> scores, double base_reward, double lambda,
                       double format_reward);

// {"base_reward","lambda","format_reward","rewards":{id: r}}
nlohmann::ordered_json reward_spec_to_json(const RewardSpec& spec);

// Throws Error(Schema) naming the offending field.
RewardSpec reward_spec_from_json(const nlohmann::json& j);

}  // namespace dri::curriculum
