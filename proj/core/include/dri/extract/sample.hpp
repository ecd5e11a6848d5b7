#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dri::extract {

enum class SampleKind { Bqa, Mcqa };

// One QA item. A BQA sample is a single-option MCQA whose option is the
// question itself; its gold label lives in `bqa_yes` and `answer` is 0.
struct Sample {
  std::string id;
  std::string context;
  std::string question;
  std::vector<std::string> options;
  std::size_t answer = 0;
  SampleKind kind = SampleKind::Mcqa;
  bool bqa_yes = true;

  std::size_t option_count() const noexcept { return options.size(); }
  bool is_correct_option(std::size_t index) const noexcept;
};

inline constexpr std::size_t kMaxMcqaOptions = 8;

// Accepts {"id","context","question","options","answer","kind"}. MCQA answers
// may be an index, a digit string, or a letter A-H; BQA answers are
// yes/no/true/false. Throws InvalidInput on contract violations.
Sample sample_from_json(const nlohmann::json& j);
nlohmann::ordered_json sample_to_json(const Sample& s);

// Loads samples JSONL; errors carry the file and line number. Ids must be
// unique.
std::vector<Sample> load_samples(const std::filesystem::path& path);

}  // namespace dri::extract
