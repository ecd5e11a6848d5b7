#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dri/extract/chat_client.hpp"

namespace dri::cli {

namespace fs = std::filesystem;

struct CommandResult {
  nlohmann::ordered_json summary;
  int exit_code = 0;
};

struct ExtractOptions {
  fs::path samples;
  fs::path out;
  fs::path cache;
  extract::LlmConfig llm;
  double max_failure_rate = 0.05;
};

// Transport override for tests; live mode builds an HTTP transport otherwise.
CommandResult cmd_extract(const ExtractOptions& o, std::shared_ptr<extract::ChatTransport> transport = nullptr);

struct ScoreOptions {
  std::vector<std::pair<std::string, fs::path>> splits;  // name, extraction dir
  std::string reference;                                  // defaults to the first split
  std::optional<fs::path> stats_in;
  fs::path out_dir;
  bool include_implication = false;
};

CommandResult cmd_score(const ScoreOptions& o);

struct AnalyzeOptions {
  fs::path scores;
  std::optional<fs::path> ids;
  std::optional<fs::path> predictions;
  std::string scheme = "uniform20";
  fs::path out;  // writes <out>.json and <out>.csv
};

CommandResult cmd_analyze(const AnalyzeOptions& o);

struct BalanceOptions {
  fs::path scores;
  std::size_t per_bin = 80;
  std::uint64_t seed = 0;
  std::string policy = "strict";
  fs::path out;
};

CommandResult cmd_balance(const BalanceOptions& o);

struct FilterOptions {
  fs::path scores;
  double lo = 0.0;
  double hi = 1.0;
  fs::path out;
};

CommandResult cmd_filter(const FilterOptions& o);

struct CurriculumOptions {
  fs::path scores;
  std::optional<fs::path> ids;
  std::size_t epochs = 2;
  std::uint64_t seed = 0;
  std::string mode = "descending";
  double min_weight = 0.0;
  fs::path out;
};

CommandResult cmd_curriculum(const CurriculumOptions& o);

struct RewardsOptions {
  fs::path scores;
  std::optional<fs::path> ids;
  double base_reward = 1.0;
  double lambda = 1.0;
  double format_reward = 0.5;
  fs::path out;
};

CommandResult cmd_rewards(const RewardsOptions& o);

}  // namespace dri::cli
