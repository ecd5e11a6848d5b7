#include "dri/extract/chat_client.hpp"

#include <cmath>
#include <random>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace dri::extract {

void LlmConfig::validate() const {
  auto bad = [](const std::string& m) { throw Error(ErrorCode::InvalidParameter, m); };
  if (concurrency < 1) bad("concurrency must be at least 1");
  if (max_attempts < 1) bad("max attempts must be at least 1");
  if (model.empty()) bad("model name is empty");
  if (!(temperature >= 0.0 && temperature <= 2.0)) bad("temperature must be within [0, 2]");
  if (backoff_factor < 1.0) bad("backoff factor must be >= 1");
  if (mode == LlmMode::Live && endpoint.empty()) bad("live mode needs an endpoint");
}

namespace {

struct SplitUrl {
  std::string origin;
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw Error(ErrorCode::InvalidParameter, "endpoint must be an http(s) URL: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/v1/chat/completions"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

HttpChatTransport::HttpChatTransport(const LlmConfig& config)
    : api_key_(config.api_key), timeout_(config.timeout) {
  auto parts = split_url(config.endpoint);
  origin_ = std::move(parts.origin);
  path_ = std::move(parts.path);
}

HttpReply HttpChatTransport::post(const std::string& json_body) {
  httplib::Client client(origin_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
  auto res = client.Post(path_, headers, json_body, "application/json");
  if (!res) return HttpReply{0, {}, httplib::to_string(res.error())};
  return HttpReply{res->status, res->body, {}};
}

bool is_retryable(int status) noexcept { return status == 0 || status == 429 || status >= 500; }

std::string chat_request_body(std::string_view model, std::string_view prompt, double temperature) {
  nlohmann::ordered_json body;
  body["model"] = model;
  body["messages"] = nlohmann::ordered_json::array({{{"role", "user"}, {"content", prompt}}});
  body["temperature"] = temperature;
  return body.dump();
}

ChatClient::ChatClient(LlmConfig config, ChatTransport& transport, Sleeper sleeper)
    : config_(std::move(config)), transport_(transport), sleep_(std::move(sleeper)) {
  if (!sleep_) sleep_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::chrono::milliseconds ChatClient::backoff(std::size_t attempt) const {
  double ms = static_cast<double>(config_.backoff_initial.count()) *
              std::pow(config_.backoff_factor, static_cast<double>(attempt - 1));
  if (config_.jitter) {
    thread_local std::mt19937_64 rng{std::random_device{}()};
    ms *= std::uniform_real_distribution<double>(0.75, 1.25)(rng);
  }
  return std::chrono::milliseconds(static_cast<long long>(std::llround(ms)));
}

std::string ChatClient::complete(std::string_view prompt) {
  const std::string body = chat_request_body(config_.model, prompt, config_.temperature);
  std::string last_error;
  int last_status = 0;
  for (std::size_t attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    ++requests_;
    HttpReply reply = transport_.post(body);
    last_status = reply.status;
    if (reply.status == 200) {
      auto j = nlohmann::json::parse(reply.body, nullptr, false);
      if (!j.is_discarded() && j.contains("choices") && j["choices"].is_array() && !j["choices"].empty()) {
        const auto& msg = j["choices"][0];
        if (msg.contains("message") && msg["message"].contains("content") &&
            msg["message"]["content"].is_string())
          return msg["message"]["content"].get<std::string>();
      }
      last_error = "malformed chat-completions body";
    } else {
      last_error = reply.status == 0 ? "connection failed: " + reply.error
                                     : "HTTP " + std::to_string(reply.status);
      if (!is_retryable(reply.status)) throw TransportError(reply.status, last_error);
    }
    if (attempt < config_.max_attempts) sleep_(backoff(attempt));
  }
  throw TransportError(last_status, last_error + " after " + std::to_string(config_.max_attempts) + " attempts");
}

}  // namespace dri::extract
