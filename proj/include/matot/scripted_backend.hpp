#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "matot/backend.hpp"

namespace matot {

/**
 * One scripted response. Exactly one match rule applies:
 *  - `stream` non-empty: consumed in order by calls whose derived stream
 *    key (see stream_key) equals it;
 *  - `match` non-empty: consumed in order by calls whose rendered prompt
 *    contains the substring.
 */
struct FixtureEntry {
  std::string stream;
  std::string match;
  std::string response;
  std::optional<long> prompt_tokens;
  std::optional<long> completion_tokens;
};

/**
 * Deterministic replay backend driven by a JSON Lines fixture
 * ({stream | match, response, prompt_tokens?, completion_tokens?} per line).
 *
 * A call matches at most one rule group: the next entry of its derived
 * ordinal stream, or the next unconsumed entry of a substring group whose
 * needle occurs in the prompt. Two distinct groups matching the same call
 * is an ambiguity error; a group that exists but is used up is an
 * exhaustion error; no group at all is a fixture gap. All three fail
 * loudly — a scripted backend never fabricates a response.
 */
class ScriptedBackend : public ChatBackend {
 public:
  static ScriptedBackend from_file(const std::filesystem::path& path);
  static ScriptedBackend from_stream(std::istream& in, const std::string& name);
  static ScriptedBackend from_string(const std::string& jsonl, const std::string& name = "inline");

  CompletionResult complete(const std::vector<ChatMessage>& messages,
                            const SamplingParams& params,
                            const CallContext& context) override;

  std::string id() const override { return "scripted:" + name_; }

  std::size_t entry_count() const { return entries_.size(); }

 private:
  struct Group {
    std::vector<std::size_t> entry_indices;
    std::size_t cursor = 0;
  };

  explicit ScriptedBackend(std::vector<FixtureEntry> entries, std::string name);

  const FixtureEntry& next_entry(const std::vector<ChatMessage>& messages,
                                 const CallContext& context);

  std::vector<FixtureEntry> entries_;
  std::map<std::string, Group> streams_;     // stream key -> ordinal group
  std::map<std::string, Group> substrings_;  // needle -> ordinal group
  std::string name_;
  std::mutex mutex_;
};

}  // namespace matot
