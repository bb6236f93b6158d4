#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace matot {

enum class MessageRole { system, user, assistant };

inline const char* to_string(MessageRole role) {
  switch (role) {
    case MessageRole::system: return "system";
    case MessageRole::user: return "user";
    case MessageRole::assistant: return "assistant";
  }
  return "user";
}

struct ChatMessage {
  MessageRole role = MessageRole::user;
  std::string content;
};

inline ChatMessage user_message(std::string content) {
  return ChatMessage{MessageRole::user, std::move(content)};
}

/**
 * Sampling controls forwarded to the model backend.
 * max_tokens == 0 means unbounded (the field is omitted from requests).
 */
struct SamplingParams {
  double temperature = 1.0;
  double top_p = 1.0;
  int n = 1;
  int max_tokens = 0;

  void validate() const {
    if (temperature < 0.0) throw std::invalid_argument("SamplingParams: temperature < 0");
    if (top_p <= 0.0 || top_p > 1.0) throw std::invalid_argument("SamplingParams: top_p outside (0,1]");
    if (n < 1) throw std::invalid_argument("SamplingParams: n < 1");
    if (max_tokens < 0) throw std::invalid_argument("SamplingParams: max_tokens < 0");
  }
};

struct CompletionResult {
  std::vector<std::string> texts;  // exactly n entries on success
  long prompt_tokens = 0;
  long completion_tokens = 0;
  std::string backend_id;
  std::uint64_t call_index = 0;  // monotone per gateway
};

}  // namespace matot
