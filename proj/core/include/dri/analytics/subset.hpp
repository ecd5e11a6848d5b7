#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dri/analytics/bins.hpp"
#include "dri/score/score_io.hpp"

namespace dri::analytics {

using score::ScoredId;

enum class ShortBinPolicy { Strict, TakeAll };
ShortBinPolicy parse_policy(std::string_view name);

struct Pick {
  std::string id;
  std::size_t bin = 0;
};

struct Subset {
  std::vector<Pick> picks;  // ordered by (bin, draw order)
  std::vector<std::string> warnings;
};

inline constexpr std::size_t kDefaultPerBin = 80;

// Draws `per_bin` ids without replacement from each bin of `scheme`
// (Balanced16 by default) with a seeded partial Fisher-Yates shuffle. Under
// Strict a short bin throws InsufficientBin before anything is drawn;
// TakeAll keeps every id of a short bin and records a warning.
Subset balanced_subset(std::span<const ScoredId> scores, std::size_t per_bin, std::uint64_t seed,
                       ShortBinPolicy policy, const BinScheme& scheme = BinScheme::balanced16());

// Ids with lo <= score < hi in input order; hi = 1 also keeps scores of
// exactly 1. Throws InvalidRange unless 0 <= lo < hi <= 1.
std::vector<std::string> range_filter(std::span<const ScoredId> scores, double lo, double hi);

// Id-list JSONL: {"id"} or {"id","bin"} per line.
std::string ids_to_jsonl(std::span<const std::string> ids);
std::string picks_to_jsonl(std::span<const Pick> picks);
std::vector<std::string> load_id_list(const std::filesystem::path& path);

}  // namespace dri::analytics
