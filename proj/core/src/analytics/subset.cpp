#include "dri/analytics/subset.hpp"

#include <cmath>
#include <unordered_set>

#include "dri/common/error.hpp"
#include "dri/common/io.hpp"
#include "dri/common/random.hpp"

namespace dri::analytics {

ShortBinPolicy parse_policy(std::string_view name) {
  if (name == "strict") return ShortBinPolicy::Strict;
  if (name == "take-all" || name == "take_all") return ShortBinPolicy::TakeAll;
  throw Error(ErrorCode::InvalidParameter, "policy must be strict or take-all");
}

Subset balanced_subset(std::span<const ScoredId> scores, std::size_t per_bin, std::uint64_t seed,
                       ShortBinPolicy policy, const BinScheme& scheme) {
  if (per_bin < 1) throw Error(ErrorCode::InvalidParameter, "per_bin must be at least 1");
  std::vector<std::vector<const std::string*>> members(scheme.bins());
  for (const auto& s : scores) {
    try {
      members[scheme.bin_of(s.score)].push_back(&s.id);
    } catch (const Error& e) {
      throw Error(e.code(), "sample " + s.id + ": " + e.what());
    }
  }

  Subset out;
  for (std::size_t b = 0; b < members.size(); ++b) {
    if (members[b].size() >= per_bin) continue;
    if (policy == ShortBinPolicy::Strict) throw InsufficientBin(b, members[b].size(), per_bin);
    out.warnings.push_back("bin " + std::to_string(b) + " has " + std::to_string(members[b].size()) +
                           " of " + std::to_string(per_bin) + " samples; all kept");
  }

  Rng rng(seed);
  for (std::size_t b = 0; b < members.size(); ++b) {
    auto& m = members[b];
    const std::size_t take = std::min(per_bin, m.size());
    for (std::size_t k = 0; k < take; ++k) {
      const auto j = k + static_cast<std::size_t>(uniform_below(rng, m.size() - k));
      std::swap(m[k], m[j]);
      out.picks.push_back({*m[k], b});
    }
  }
  return out;
}

std::vector<std::string> range_filter(std::span<const ScoredId> scores, double lo, double hi) {
  if (!(lo >= 0.0 && lo < hi && hi <= 1.0))
    throw Error(ErrorCode::InvalidRange, "range needs 0 <= lo < hi <= 1");
  std::vector<std::string> ids;
  for (const auto& s : scores) {
    if ((s.score >= lo && s.score < hi) || (hi == 1.0 && s.score == 1.0)) ids.push_back(s.id);
  }
  return ids;
}

std::string ids_to_jsonl(std::span<const std::string> ids) {
  std::vector<nlohmann::ordered_json> rows;
  rows.reserve(ids.size());
  for (const auto& id : ids) rows.push_back({{"id", id}});
  return io::to_jsonl(rows);
}

std::string picks_to_jsonl(std::span<const Pick> picks) {
  std::vector<nlohmann::ordered_json> rows;
  rows.reserve(picks.size());
  for (const auto& p : picks) {
    nlohmann::ordered_json j;
    j["id"] = p.id;
    j["bin"] = p.bin;
    rows.push_back(std::move(j));
  }
  return io::to_jsonl(rows);
}

std::vector<std::string> load_id_list(const std::filesystem::path& path) {
  std::vector<std::string> ids;
  std::unordered_set<std::string> seen;
  io::for_each_jsonl(path, [&](std::size_t, const nlohmann::json& j) {
    std::string id;
    if (j.is_string()) id = j.get<std::string>();
    else if (j.is_object() && j.contains("id") && j["id"].is_string()) id = j["id"].get<std::string>();
    else if (j.is_object() && j.contains("id") && j["id"].is_number_integer()) id = std::to_string(j["id"].get<long long>());
    else throw Error(ErrorCode::InvalidInput, "id-list row needs an \"id\"");
    if (!seen.insert(id).second) throw Error(ErrorCode::DuplicateId, "duplicate id " + id);
    ids.push_back(std::move(id));
  });
  return ids;
}

}  // namespace dri::analytics
