#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace dri::extract {

// SHA-256 (hex) over a versioned, length-prefixed encoding of all inputs.
// The temperature is encoded with its shortest round-trip decimal form, so
// keys agree across runs and platforms.
std::string cache_key(std::string_view stage, std::string_view prompt, std::string_view model,
                      double temperature);

struct CacheEntry {
  std::string key;
  std::string stage;
  std::string model;
  double temperature = 0.0;
  std::string raw;         // response body as received
  nlohmann::json parsed;   // structured value recovered from `raw`
  std::string timestamp;   // ISO-8601 UTC
};

// One JSON file per key under `dir`. Readers run concurrently; writers are
// serialised and publish through an atomic rename.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  std::optional<CacheEntry> get(const std::string& key) const;
  void put(const CacheEntry& entry);

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  const std::filesystem::path& dir() const noexcept { return dir_; }

  std::filesystem::path path_for(const std::string& key) const;

 private:
  std::filesystem::path dir_;
  mutable std::shared_mutex mutex_;
};

std::string utc_timestamp();

}  // namespace dri::extract
