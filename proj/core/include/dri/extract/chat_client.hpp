#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "dri/common/error.hpp"

namespace dri::extract {

enum class LlmMode { Live, Replay };

struct LlmConfig {
  std::string endpoint;  // full chat-completions URL
  std::string model = "gpt-4o";
  double temperature = 0.0;
  std::size_t max_attempts = 5;
  std::chrono::milliseconds timeout{60'000};
  std::size_t concurrency = 4;
  LlmMode mode = LlmMode::Live;
  std::string api_key;  // sent as a Bearer token when non-empty
  std::chrono::milliseconds backoff_initial{1'000};
  double backoff_factor = 2.0;
  bool jitter = true;

  // Throws InvalidParameter on a bad combination (concurrency 0, live mode
  // without endpoint, ...).
  void validate() const;
};

struct HttpReply {
  int status = 0;  // 0 when no HTTP response arrived
  std::string body;
  std::string error;
};

class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  virtual HttpReply post(const std::string& json_body) = 0;
};

// POSTs to an OpenAI-compatible endpoint over HTTP or HTTPS.
class HttpChatTransport : public ChatTransport {
 public:
  explicit HttpChatTransport(const LlmConfig& config);
  HttpReply post(const std::string& json_body) override;

 private:
  std::string origin_;
  std::string path_;
  std::string api_key_;
  std::chrono::milliseconds timeout_;
};

class TransportError : public Error {
 public:
  TransportError(int status, const std::string& message)
      : Error(ErrorCode::Transport, message), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

// 429, 5xx and connection failures are retried; other statuses are final.
bool is_retryable(int status) noexcept;

// Sends single-turn chat requests with exponential backoff and returns the
// first choice's message content.
class ChatClient {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  ChatClient(LlmConfig config, ChatTransport& transport, Sleeper sleeper = {});

  std::string complete(std::string_view prompt);

  std::size_t requests_sent() const noexcept { return requests_.load(); }

  // Delay before retry `attempt` (1-based count of failures so far).
  std::chrono::milliseconds backoff(std::size_t attempt) const;

 private:
  LlmConfig config_;
  ChatTransport& transport_;
  Sleeper sleep_;
  std::atomic<std::size_t> requests_{0};
};

std::string chat_request_body(std::string_view model, std::string_view prompt, double temperature);

}  // namespace dri::extract
