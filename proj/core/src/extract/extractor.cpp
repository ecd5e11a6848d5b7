#include "dri/extract/extractor.hpp"

#include <optional>
#include <thread>

#include "dri/common/io.hpp"
#include "dri/extract/json_repair.hpp"
#include "dri/extract/prompts.hpp"
#include "dri/extract/response_parser.hpp"

namespace dri::extract {

double CorpusExtraction::failure_rate() const noexcept {
  return samples == 0 ? 0.0 : static_cast<double>(failures.size()) / static_cast<double>(samples);
}

double CorpusExtraction::parse_failure_rate() const noexcept {
  return expressions == 0 ? 0.0 : static_cast<double>(unparsed_expressions) / static_cast<double>(expressions);
}

Extractor::Extractor(LlmConfig config, ResponseCache& cache, std::shared_ptr<ChatTransport> transport,
                     ChatClient::Sleeper sleeper)
    : config_(std::move(config)), cache_(cache), transport_(std::move(transport)) {
  config_.validate();
  if (config_.mode == LlmMode::Live) {
    if (!transport_) transport_ = std::make_shared<HttpChatTransport>(config_);
    client_ = std::make_unique<ChatClient>(config_, *transport_, std::move(sleeper));
  }
}

std::size_t Extractor::requests_sent() const noexcept { return client_ ? client_->requests_sent() : 0; }

nlohmann::json Extractor::stage_value(const Sample& sample, std::string_view stage, const std::string& prompt) {
  const std::string key = cache_key(stage, prompt, config_.model, config_.temperature);
  if (auto hit = cache_.get(key)) {
    ++hits_;
    return std::move(hit->parsed);
  }
  const std::string stage_name(stage);
  if (config_.mode == LlmMode::Replay)
    throw ExtractionFailed(sample.id, stage_name, ErrorCode::ReplayMiss, "no cached response for key " + key);

  std::string raw;
  try {
    raw = client_->complete(prompt);
  } catch (const TransportError& e) {
    throw ExtractionFailed(sample.id, stage_name, ErrorCode::Transport, e.what());
  }
  nlohmann::json value;
  try {
    value = stage == kStageDecompose ? decomposition_value(raw) : analysis_value(raw);
  } catch (const UnrepairableResponse& e) {
    throw ExtractionFailed(sample.id, stage_name, ErrorCode::UnrepairableResponse, e.what());
  }
  // Validate the shape before caching so a bad reply is retried next run.
  try {
    if (stage == kStageDecompose)
      (void)elements_from_value(value);
    else
      (void)analyses_from_value(value, sample);
  } catch (const Error& e) {
    throw ExtractionFailed(sample.id, stage_name, ErrorCode::Schema, e.what());
  }
  CacheEntry entry{key, stage_name, config_.model, config_.temperature, std::move(raw), value, utc_timestamp()};
  cache_.put(entry);
  return value;
}

ExtractionResult Extractor::extract(const Sample& sample) {
  ExtractionResult out;
  out.id = sample.id;
  const std::string stage_d(kStageDecompose);
  const std::string stage_a(kStageAnalyze);

  auto decomposition = stage_value(sample, kStageDecompose, render_decompose_prompt(sample));
  try {
    out.elements = elements_from_value(decomposition);
  } catch (const Error& e) {
    throw ExtractionFailed(sample.id, stage_d, ErrorCode::Schema, e.what());
  }
  auto analysis = stage_value(sample, kStageAnalyze, render_analyze_prompt(sample, out.elements));
  try {
    out.analyses = analyses_from_value(analysis, sample);
  } catch (const Error& e) {
    throw ExtractionFailed(sample.id, stage_a, ErrorCode::Schema, e.what());
  }
  return out;
}

CorpusExtraction Extractor::extract_corpus(const std::vector<Sample>& samples) {
  struct Slot {
    std::optional<ExtractionResult> result;
    std::optional<ExtractionFailure> failure;
  };
  std::vector<Slot> slots(samples.size());
  std::atomic<std::size_t> next{0};
  const std::size_t before_hits = hits_.load();
  const std::size_t before_requests = requests_sent();

  auto worker = [&] {
    for (std::size_t i = next++; i < samples.size(); i = next++) {
      try {
        slots[i].result = extract(samples[i]);
      } catch (const ExtractionFailed& e) {
        slots[i].failure = ExtractionFailure{e.id(), e.stage(), e.cause(), e.detail()};
      }
    }
  };
  const std::size_t n_workers = std::min<std::size_t>(config_.concurrency, std::max<std::size_t>(samples.size(), 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
  }

  CorpusExtraction run;
  run.samples = samples.size();
  for (auto& s : slots) {
    if (s.failure) {
      run.failures.push_back(std::move(*s.failure));
      continue;
    }
    auto& r = *s.result;
    run.expressions += r.elements.expressions.size();
    run.unparsed_expressions += r.elements.parse_failures();
    for (const auto& o : r.analyses.options) {
      run.expressions += o.preconditions.size() + o.steps.size();
      run.unparsed_expressions += o.parse_failures();
    }
    run.results.push_back(std::move(r));
  }
  run.cache_hits = hits_.load() - before_hits;
  run.requests = requests_sent() - before_requests;
  return run;
}

nlohmann::ordered_json failure_to_json(const ExtractionFailure& f) {
  nlohmann::ordered_json j;
  j["id"] = f.id;
  j["stage"] = f.stage;
  j["code"] = to_string(f.cause);
  j["message"] = f.message;
  return j;
}

void write_extraction(const std::filesystem::path& dir, const CorpusExtraction& run) {
  std::filesystem::create_directories(dir);
  std::vector<nlohmann::ordered_json> elements, analyses, failures;
  for (const auto& r : run.results) {
    elements.push_back(elements_to_json(r.id, r.elements));
    analyses.push_back(analyses_to_json(r.id, r.analyses));
  }
  for (const auto& f : run.failures) failures.push_back(failure_to_json(f));
  io::write_file_atomic(dir / "elements.jsonl", io::to_jsonl(elements));
  io::write_file_atomic(dir / "analyses.jsonl", io::to_jsonl(analyses));
  io::write_file_atomic(dir / "failures.jsonl", io::to_jsonl(failures));
}

}  // namespace dri::extract
