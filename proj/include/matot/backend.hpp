#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "matot/chat.hpp"
#include "matot/usage.hpp"

namespace matot {

enum class BackendErrorKind {
  transport,          // network/transport failure after retries exhausted
  malformed_payload,  // backend answered, but not with a usable completion
  fixture_exhausted,  // a scripted stream exists but has no entries left
  fixture_no_match,   // no scripted rule targets this call (fixture gap)
  fixture_ambiguous,  // two scripted rules match one call
  config,             // invalid backend configuration
};

class BackendError : public std::runtime_error {
 public:
  BackendError(BackendErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  BackendErrorKind kind() const { return kind_; }

 private:
  BackendErrorKind kind_;
};

/**
 * Attribution of a model call: which agent, round and pipeline role it
 * belongs to. `scope` namespaces independent solves sharing one backend
 * (the benchmark harness sets it to the problem id).
 *
 * The scripted backend routes ordinal fixture streams by the derived
 * stream key, so identical configurations replay identically even with
 * agents running concurrently.
 */
struct CallContext {
  CallRole role = CallRole::baseline;
  int round = 0;
  int agent = 0;
  std::string scope;
};

/// "scope.a{agent}.r{round}.{role}", omitting empty/zero parts.
std::string stream_key(const CallContext& context);

/**
 * Uniform interface to a chat-completion backend. Implementations must be
 * safe to call from concurrently running agents.
 */
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;

  virtual CompletionResult complete(const std::vector<ChatMessage>& messages,
                                    const SamplingParams& params,
                                    const CallContext& context) = 0;

  virtual std::string id() const = 0;
};

/// Whitespace-delimited token count, the deterministic fallback when a
/// fixture entry carries no token metadata.
long whitespace_token_count(const std::string& text);
long whitespace_token_count(const std::vector<ChatMessage>& messages);

}  // namespace matot
