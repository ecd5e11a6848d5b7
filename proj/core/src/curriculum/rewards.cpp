#include "dri/curriculum/rewards.hpp"

#include <algorithm>
#include <cmath>

#include "dri/common/error.hpp"
#include "dri/curriculum/manifest.hpp"

namespace dri::curriculum {

namespace {

[[noreturn]] void schema(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::Schema, "reward field " + field + ": " + why);
}

double field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name) || !j[name].is_number()) schema(name, "must be a number");
  return j[name].get<double>();
}

}  // namespace

RewardSpec reward_spec(std::span<const score::ScoredId> scores, double base_reward, double lambda,
                       double format_reward) {
  if (!(base_reward > 0) || !std::isfinite(base_reward))
    throw Error(ErrorCode::InvalidParameter, "base_reward must be > 0");
  if (!(lambda >= 0) || !std::isfinite(lambda)) throw Error(ErrorCode::InvalidParameter, "lambda must be >= 0");
  if (!std::isfinite(format_reward)) throw Error(ErrorCode::InvalidParameter, "format_reward must be finite");
  if (scores.empty()) throw Error(ErrorCode::EmptyCorpus, "no scores to turn into rewards");
  (void)make_score_table(scores);  // duplicate check

  std::vector<double> s;
  s.reserve(scores.size());
  for (const auto& x : scores) s.push_back(x.score);
  const auto hat = min_max(s);

  RewardSpec spec;
  spec.base_reward = base_reward;
  spec.lambda = lambda;
  spec.format_reward = format_reward;
  for (std::size_t i = 0; i < scores.size(); ++i)
    spec.rewards.emplace_back(scores[i].id, base_reward * (1.0 + lambda * hat[i]));
  std::sort(spec.rewards.begin(), spec.rewards.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return spec;
}

nlohmann::ordered_json reward_spec_to_json(const RewardSpec& spec) {
  nlohmann::ordered_json j;
  j["base_reward"] = spec.base_reward;
  j["lambda"] = spec.lambda;
  j["format_reward"] = spec.format_reward;
  nlohmann::ordered_json rewards = nlohmann::ordered_json::object();
  for (const auto& [id, r] : spec.rewards) rewards[id] = r;
  j["rewards"] = std::move(rewards);
  return j;
}

RewardSpec reward_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) schema("(root)", "must be an object");
  RewardSpec spec;
  spec.base_reward = field(j, "base_reward");
  spec.lambda = field(j, "lambda");
  spec.format_reward = field(j, "format_reward");
  if (!(spec.base_reward > 0)) schema("base_reward", "must be > 0");
  if (!(spec.lambda >= 0)) schema("lambda", "must be >= 0");
  if (!j.contains("rewards") || !j["rewards"].is_object()) schema("rewards", "must be an object");
  for (auto it = j["rewards"].begin(); it != j["rewards"].end(); ++it) {
    if (!it.value().is_number()) schema("rewards." + it.key(), "must be a number");
    const double r = it.value().get<double>();
    if (!(r >= spec.base_reward)) schema("rewards." + it.key(), "below base_reward");
    spec.rewards.emplace_back(it.key(), r);
  }
  std::sort(spec.rewards.begin(), spec.rewards.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return spec;
}

}  // namespace dri::curriculum
