#include "matot/scripted_backend.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace matot {

std::string stream_key(const CallContext& context) {
  std::string key;
  const auto add = [&key](const std::string& part) {
    if (part.empty()) return;
    if (!key.empty()) key += '.';
    key += part;
  };
  add(context.scope);
  if (context.agent > 0) add("a" + std::to_string(context.agent));
  if (context.round > 0) add("r" + std::to_string(context.round));
  add(to_string(context.role));
  return key;
}

long whitespace_token_count(const std::string& text) {
  long count = 0;
  bool in_token = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      in_token = false;
    } else if (!in_token) {
      in_token = true;
      ++count;
    }
  }
  return count;
}

long whitespace_token_count(const std::vector<ChatMessage>& messages) {
  long count = 0;
  for (const ChatMessage& message : messages) {
    count += whitespace_token_count(message.content);
  }
  return count;
}

ScriptedBackend::ScriptedBackend(std::vector<FixtureEntry> entries, std::string name)
    : entries_(std::move(entries)), name_(std::move(name)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const FixtureEntry& entry = entries_[i];
    if (!entry.stream.empty()) {
      streams_[entry.stream].entry_indices.push_back(i);
    } else {
      substrings_[entry.match].entry_indices.push_back(i);
    }
  }
}

ScriptedBackend ScriptedBackend::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw BackendError(BackendErrorKind::config,
                       "cannot open fixture file: " + path.string());
  }
  return from_stream(in, path.string());
}

ScriptedBackend ScriptedBackend::from_string(const std::string& jsonl, const std::string& name) {
  std::istringstream in(jsonl);
  return from_stream(in, name);
}

ScriptedBackend ScriptedBackend::from_stream(std::istream& in, const std::string& name) {
  std::vector<FixtureEntry> entries;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw BackendError(BackendErrorKind::config,
                         name + ": line " + std::to_string(line_number) +
                             ": invalid JSON: " + e.what());
    }
    FixtureEntry entry;
    entry.stream = record.value("stream", "");
    entry.match = record.value("match", "");
    if (entry.stream.empty() == entry.match.empty()) {
      throw BackendError(BackendErrorKind::config,
                         name + ": line " + std::to_string(line_number) +
                             ": entry needs exactly one of 'stream' or 'match'");
    }
    if (!record.contains("response") || !record["response"].is_string()) {
      throw BackendError(BackendErrorKind::config,
                         name + ": line " + std::to_string(line_number) +
                             ": entry needs a string 'response'");
    }
    entry.response = record["response"].get<std::string>();
    if (record.contains("prompt_tokens")) {
      entry.prompt_tokens = record["prompt_tokens"].get<long>();
    }
    if (record.contains("completion_tokens")) {
      entry.completion_tokens = record["completion_tokens"].get<long>();
    }
    entries.push_back(std::move(entry));
  }
  return ScriptedBackend(std::move(entries), name);
}

const FixtureEntry& ScriptedBackend::next_entry(const std::vector<ChatMessage>& messages,
                                                const CallContext& context) {
  const std::string key = stream_key(context);
  std::string prompt;
  for (const ChatMessage& message : messages) {
    prompt += message.content;
    prompt += '\n';
  }

  // Collect every rule group that targets this call.
  Group* chosen = nullptr;
  int live_candidates = 0;
  int exhausted_candidates = 0;
  std::string candidate_names;

  const auto consider = [&](Group& group, const std::string& group_name) {
    if (group.cursor < group.entry_indices.size()) {
      ++live_candidates;
      chosen = &group;
      if (!candidate_names.empty()) candidate_names += ", ";
      candidate_names += group_name;
    } else {
      ++exhausted_candidates;
    }
  };

  auto stream_it = streams_.find(key);
  if (stream_it != streams_.end()) {
    consider(stream_it->second, "stream '" + key + "'");
  }
  for (auto& [needle, group] : substrings_) {
    if (prompt.find(needle) != std::string::npos) {
      consider(group, "match '" + needle + "'");
    }
  }

  if (live_candidates > 1) {
    throw BackendError(BackendErrorKind::fixture_ambiguous,
                       id() + ": ambiguous match for call on stream '" + key +
                           "': " + candidate_names);
  }
  if (live_candidates == 0) {
    if (exhausted_candidates > 0) {
      throw BackendError(BackendErrorKind::fixture_exhausted,
                         id() + ": fixture exhausted for stream '" + key + "'");
    }
    throw BackendError(BackendErrorKind::fixture_no_match,
                       id() + ": no scripted response for stream '" + key +
                           "' (fixture gap)");
  }

  return entries_[chosen->entry_indices[chosen->cursor++]];
}

CompletionResult ScriptedBackend::complete(const std::vector<ChatMessage>& messages,
                                           const SamplingParams& params,
                                           const CallContext& context) {
  params.validate();
  std::lock_guard<std::mutex> lock(mutex_);

  CompletionResult result;
  result.backend_id = id();
  for (int i = 0; i < params.n; ++i) {
    const FixtureEntry& entry = next_entry(messages, context);
    result.texts.push_back(entry.response);
    if (i == 0) {
      result.prompt_tokens =
          entry.prompt_tokens ? *entry.prompt_tokens : whitespace_token_count(messages);
    }
    result.completion_tokens +=
        entry.completion_tokens ? *entry.completion_tokens
                                : whitespace_token_count(entry.response);
  }
  return result;
}

}  // namespace matot
