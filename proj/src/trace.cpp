#include "matot/trace.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace matot {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string prompt_hash(const std::vector<ChatMessage>& messages) {
  std::string flat;
  for (const ChatMessage& message : messages) {
    flat += to_string(message.role);
    flat += '\x1f';
    flat += message.content;
    flat += '\x1e';
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx",
                static_cast<unsigned long long>(fnv1a64(flat)));
  return std::string(buf);
}

void TraceCollector::register_scope(const std::string& scope) {
  std::lock_guard<std::mutex> lock(mutex_);
  scope_index_locked(scope);
}

int TraceCollector::scope_index_locked(const std::string& scope) {
  auto it = scope_order_.find(scope);
  if (it != scope_order_.end()) return it->second;
  const int index = static_cast<int>(scope_order_.size());
  scope_order_.emplace(scope, index);
  return index;
}

void TraceCollector::set_config_echo(nlohmann::json config) {
  std::lock_guard<std::mutex> lock(mutex_);
  config_echo_ = std::move(config);
}

void TraceCollector::add_call(const CallContext& context, const std::string& hash,
                              const std::vector<std::string>& texts, long prompt_tokens,
                              long completion_tokens) {
  std::lock_guard<std::mutex> lock(mutex_);
  Entry entry;
  entry.scope_index = scope_index_locked(context.scope);
  entry.round = context.round;
  entry.agent = context.agent;
  entry.kind = 0;
  const std::string counter_key = context.scope + "#a" + std::to_string(context.agent) +
                                  "#r" + std::to_string(context.round);
  entry.seq = seq_counters_[counter_key]++;
  entry.record = {
      {"type", "call"},
      {"scope", context.scope},
      {"role", to_string(context.role)},
      {"round", context.round},
      {"agent", context.agent},
      {"seq", entry.seq},
      {"prompt_hash", hash},
      {"response", texts.size() == 1 ? nlohmann::json(texts[0]) : nlohmann::json(texts)},
      {"prompt_tokens", prompt_tokens},
      {"completion_tokens", completion_tokens},
  };
  entries_.push_back(std::move(entry));
}

void TraceCollector::add_outcome(const std::string& scope, int round, int agent,
                                 const std::optional<Rational>& answer, bool valid,
                                 const std::string& explanation, bool degraded) {
  std::lock_guard<std::mutex> lock(mutex_);
  Entry entry;
  entry.scope_index = scope_index_locked(scope);
  entry.round = round;
  entry.agent = agent;
  entry.kind = 1;
  entry.record = {
      {"type", "outcome"},
      {"scope", scope},
      {"round", round},
      {"agent", agent},
      {"answer", answer ? nlohmann::json(answer->to_string()) : nlohmann::json()},
      {"valid", valid},
      {"explanation", explanation},
      {"degraded", degraded},
  };
  entries_.push_back(std::move(entry));
}

void TraceCollector::add_final(const std::string& scope,
                               const std::optional<Rational>& answer,
                               const std::string& termination, int rounds_used) {
  std::lock_guard<std::mutex> lock(mutex_);
  Entry entry;
  entry.scope_index = scope_index_locked(scope);
  entry.round = std::numeric_limits<int>::max();
  entry.kind = 2;
  entry.record = {
      {"type", "final"},
      {"scope", scope},
      {"answer", answer ? nlohmann::json(answer->to_string()) : nlohmann::json()},
      {"termination", termination},
      {"rounds_used", rounds_used},
  };
  entries_.push_back(std::move(entry));
}

std::size_t TraceCollector::record_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.size() + (config_echo_.is_null() ? 0 : 1);
}

void TraceCollector::write(std::ostream& out) const {
  std::vector<Entry> sorted;
  nlohmann::json config;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    sorted = entries_;
    config = config_echo_;
  }
  std::stable_sort(sorted.begin(), sorted.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.scope_index, a.round, a.agent, a.kind, a.seq) <
           std::tie(b.scope_index, b.round, b.agent, b.kind, b.seq);
  });
  if (!config.is_null()) {
    out << nlohmann::json{{"type", "config"}, {"config", config}}.dump() << '\n';
  }
  for (const Entry& entry : sorted) {
    out << entry.record.dump() << '\n';
  }
}

void TraceCollector::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open trace file for writing: " + path);
  write(out);
}

// ============================================================================
// Replay rendering
// ============================================================================

namespace {

struct OutcomeRow {
  int agent = 0;
  std::string answer;  // canonical text, "-" when absent
  bool valid = false;
};

struct ScopeTrace {
  std::string scope;
  std::map<int, std::vector<OutcomeRow>> rounds;
  std::optional<nlohmann::json> final_record;
};

std::string pad(const std::string& text, std::size_t width) {
  std::string out = text;
  while (out.size() < width) out += ' ';
  return out;
}

}  // namespace

std::string render_trace_tables(std::istream& trace_jsonl) {
  std::vector<ScopeTrace> scopes;
  std::map<std::string, std::size_t> scope_index;

  std::string line;
  int line_number = 0;
  std::size_t record_count = 0;
  while (std::getline(trace_jsonl, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("corrupt trace at line " + std::to_string(line_number) +
                               ": " + e.what());
    }
    ++record_count;
    const std::string type = record.value("type", "");
    if (type != "outcome" && type != "final") continue;

    const std::string scope = record.value("scope", "");
    auto it = scope_index.find(scope);
    if (it == scope_index.end()) {
      it = scope_index.emplace(scope, scopes.size()).first;
      scopes.push_back(ScopeTrace{scope, {}, std::nullopt});
    }
    ScopeTrace& st = scopes[it->second];

    if (type == "outcome") {
      OutcomeRow row;
      row.agent = record.value("agent", 0);
      row.valid = record.value("valid", false);
      row.answer = record["answer"].is_null() ? "-" : record["answer"].get<std::string>();
      st.rounds[record.value("round", 0)].push_back(row);
    } else {
      st.final_record = record;
    }
  }

  if (record_count == 0) throw std::runtime_error("empty trace");
  bool any_outcome = false;
  for (const ScopeTrace& st : scopes) {
    if (!st.rounds.empty()) any_outcome = true;
  }
  if (!any_outcome) throw std::runtime_error("trace contains no outcome records");

  std::ostringstream out;
  bool first_scope = true;
  for (const ScopeTrace& st : scopes) {
    if (!first_scope) out << '\n';
    first_scope = false;
    if (!st.scope.empty()) out << "=== " << st.scope << " ===\n";

    int consensus_round = 0;
    std::string termination;
    std::string final_answer = "-";
    int rounds_used = 0;
    if (st.final_record) {
      termination = st.final_record->value("termination", "");
      rounds_used = st.final_record->value("rounds_used", 0);
      if (!(*st.final_record)["answer"].is_null()) {
        final_answer = (*st.final_record)["answer"].get<std::string>();
      }
      if (termination == "consensus") consensus_round = rounds_used;
    }

    for (const auto& [round, rows] : st.rounds) {
      std::vector<OutcomeRow> ordered = rows;
      std::sort(ordered.begin(), ordered.end(),
                [](const OutcomeRow& a, const OutcomeRow& b) { return a.agent < b.agent; });

      std::size_t answer_width = std::string("Final Answer").size();
      for (const OutcomeRow& row : ordered) {
        answer_width = std::max(answer_width, row.answer.size());
      }

      out << "(Round " << round << ") Reasoner Outputs and Verification Status\n";
      out << "| Reasoner | " << pad("Final Answer", answer_width) << " | Verified |\n";
      for (const OutcomeRow& row : ordered) {
        out << "| " << pad("R" + std::to_string(row.agent), 8) << " | "
            << pad(row.answer, answer_width) << " | " << pad(row.valid ? "True" : "False", 8)
            << " |\n";
      }

      if (round == consensus_round) {
        const int majority = static_cast<int>(ordered.size()) / 2 + 1;
        out << "Round " << round << " Conclusion: At least " << majority
            << " verified reasoners agree. Final Answer: " << final_answer << "\n";
      } else {
        out << "Round " << round << " Conclusion: No Consensus Reached.\n";
      }
    }

    if (termination == "fallback_most_frequent_valid") {
      out << "Final Conclusion: Most frequent valid answer is " << final_answer
          << ". Final answer: " << final_answer << "\n";
    } else if (termination == "fallback_most_frequent_any") {
      out << "Final Conclusion: Most frequent answer is " << final_answer
          << ". Final answer: " << final_answer << "\n";
    } else if (termination == "no_answer") {
      out << "Final Conclusion: No answer produced.\n";
    }
  }
  return out.str();
}

std::string render_trace_tables_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  return render_trace_tables(in);
}

}  // namespace matot
