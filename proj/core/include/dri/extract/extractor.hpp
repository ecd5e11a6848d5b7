#pragma once

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dri/extract/cache.hpp"
#include "dri/extract/chat_client.hpp"
#include "dri/extract/elements.hpp"
#include "dri/extract/sample.hpp"

namespace dri::extract {

inline constexpr std::string_view kStageDecompose = "decompose";
inline constexpr std::string_view kStageAnalyze = "analyze";

// A sample that could not be extracted. `cause()` is the underlying failure
// (Transport, UnrepairableResponse, Schema, ReplayMiss).
class ExtractionFailed : public Error {
 public:
  ExtractionFailed(std::string id, std::string stage, ErrorCode cause, const std::string& message)
      : Error(ErrorCode::ExtractionFailed, id + " [" + stage + "]: " + message),
        id_(std::move(id)), stage_(std::move(stage)), cause_(cause), detail_(message) {}
  const std::string& id() const noexcept { return id_; }
  const std::string& stage() const noexcept { return stage_; }
  ErrorCode cause() const noexcept { return cause_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string id_;
  std::string stage_;
  ErrorCode cause_;
  std::string detail_;
};

struct ExtractionResult {
  std::string id;
  LogicalElements elements;
  OptionAnalyses analyses;
};

struct ExtractionFailure {
  std::string id;
  std::string stage;
  ErrorCode cause;
  std::string message;
};

struct CorpusExtraction {
  std::vector<ExtractionResult> results;  // input order, successes only
  std::vector<ExtractionFailure> failures;  // input order
  std::size_t samples = 0;
  std::size_t requests = 0;
  std::size_t cache_hits = 0;
  std::size_t expressions = 0;
  std::size_t unparsed_expressions = 0;

  double failure_rate() const noexcept;
  double parse_failure_rate() const noexcept;
};

// Two-stage extraction (decompose, then option analysis) behind a
// content-addressed response cache. In replay mode the transport is never
// used and a cache miss is a failure.
class Extractor {
 public:
  Extractor(LlmConfig config, ResponseCache& cache, std::shared_ptr<ChatTransport> transport = nullptr,
            ChatClient::Sleeper sleeper = {});

  // Throws ExtractionFailed.
  ExtractionResult extract(const Sample& sample);

  // Runs up to `config.concurrency` samples at a time; failures are
  // collected, never thrown.
  CorpusExtraction extract_corpus(const std::vector<Sample>& samples);

  std::size_t requests_sent() const noexcept;
  std::size_t cache_hits() const noexcept { return hits_.load(); }

 private:
  nlohmann::json stage_value(const Sample& sample, std::string_view stage, const std::string& prompt);

  LlmConfig config_;
  ResponseCache& cache_;
  std::shared_ptr<ChatTransport> transport_;
  std::unique_ptr<ChatClient> client_;
  std::atomic<std::size_t> hits_{0};
};

// Writes elements.jsonl, analyses.jsonl and failures.jsonl under `dir`.
void write_extraction(const std::filesystem::path& dir, const CorpusExtraction& run);

nlohmann::ordered_json failure_to_json(const ExtractionFailure& f);

}  // namespace dri::extract
