#pragma once

#include <memory>
#include <string>

#include "matot/backend.hpp"

namespace matot {

/**
 * Retry schedule for transient failures (transport errors, HTTP 429/5xx).
 * At most 1 + max_retries transport attempts are made per logical call;
 * backoff doubles from initial_backoff_ms between attempts.
 */
struct RetryPolicy {
  int max_retries = 3;
  int initial_backoff_ms = 1000;
  double multiplier = 2.0;
};

struct HttpBackendConfig {
  std::string base_url;  // e.g. "https://api.openai.com" or "http://127.0.0.1:8080/v1-ish/prefix"
  std::string model;
  std::string api_key;  // empty -> no Authorization header (local servers)
  RetryPolicy retry;
  int connect_timeout_s = 10;
  int read_timeout_s = 300;
};

/**
 * OpenAI-compatible chat-completions client:
 * POST {base_url}/v1/chat/completions with model, messages, temperature,
 * top_p, n and max_tokens (when bounded). Thread-safe; one HTTP connection
 * pool shared across callers.
 */
class OpenAiHttpBackend : public ChatBackend {
 public:
  explicit OpenAiHttpBackend(HttpBackendConfig config);
  ~OpenAiHttpBackend() override;

  CompletionResult complete(const std::vector<ChatMessage>& messages,
                            const SamplingParams& params,
                            const CallContext& context) override;

  std::string id() const override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace matot
