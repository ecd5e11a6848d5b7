#include "dri/extract/cache.hpp"

#include <charconv>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <memory>
#include <mutex>

#include <openssl/evp.h>

#include "dri/common/error.hpp"
#include "dri/common/io.hpp"

namespace dri::extract {

namespace fs = std::filesystem;

namespace {

void append_field(std::string& buf, std::string_view field) {
  const auto n = static_cast<std::uint64_t>(field.size());
  for (int shift = 56; shift >= 0; shift -= 8) buf.push_back(static_cast<char>((n >> shift) & 0xff));
  buf.append(field);
}

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

}  // namespace

std::string cache_key(std::string_view stage, std::string_view prompt, std::string_view model,
                      double temperature) {
  char temp[64];
  const auto res = std::to_chars(temp, temp + sizeof temp, temperature);
  std::string buf = "dri-cache-v1";
  append_field(buf, stage);
  append_field(buf, prompt);
  append_field(buf, model);
  append_field(buf, std::string_view(temp, static_cast<std::size_t>(res.ptr - temp)));
  return sha256_hex(buf);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ResponseCache::ResponseCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path ResponseCache::path_for(const std::string& key) const { return dir_ / (key + ".json"); }

std::optional<CacheEntry> ResponseCache::get(const std::string& key) const {
  std::shared_lock lock(mutex_);
  const auto path = path_for(key);
  std::error_code ec;
  if (!fs::exists(path, ec)) return std::nullopt;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(io::read_file(path));
    CacheEntry e;
    e.key = j.at("key").get<std::string>();
    e.stage = j.at("stage").get<std::string>();
    e.model = j.at("model").get<std::string>();
    e.temperature = j.at("temperature").get<double>();
    e.raw = j.at("raw").get<std::string>();
    e.parsed = j.at("parsed");
    e.timestamp = j.value("timestamp", std::string{});
    if (e.key != key) return std::nullopt;
    return e;
  } catch (const nlohmann::json::exception&) {
    // A corrupt entry behaves like a miss and gets rewritten on the next fetch.
    return std::nullopt;
  }
}

void ResponseCache::put(const CacheEntry& e) {
  nlohmann::ordered_json j;
  j["key"] = e.key;
  j["stage"] = e.stage;
  j["model"] = e.model;
  j["temperature"] = e.temperature;
  j["timestamp"] = e.timestamp;
  j["raw"] = e.raw;
  j["parsed"] = e.parsed;
  std::unique_lock lock(mutex_);
  io::write_file_atomic(path_for(e.key), j.dump(2) + "\n");
}

std::size_t ResponseCache::size() const {
  std::shared_lock lock(mutex_);
  std::error_code ec;
  if (!fs::is_directory(dir_, ec)) return 0;
  std::size_t n = 0;
  for (const auto& entry : fs::directory_iterator(dir_))
    if (entry.path().extension() == ".json") ++n;
  return n;
}

}  // namespace dri::extract
