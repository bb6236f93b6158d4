#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "matot/backend.hpp"
#include "matot/rational.hpp"

namespace matot {

std::uint64_t fnv1a64(std::string_view data);
std::string prompt_hash(const std::vector<ChatMessage>& messages);

/**
 * Machine-readable audit trail of a solve or benchmark run: one JSON Lines
 * record per model call plus per-agent outcome and final-result records.
 *
 * Appends may come from concurrent agents. Records are sorted on a
 * deterministic key before writing, so identical runs produce byte-identical
 * trace files regardless of thread interleaving. Scopes (benchmark problem
 * ids) must be registered in input order before concurrent use.
 */
class TraceCollector {
 public:
  void register_scope(const std::string& scope);

  void set_config_echo(nlohmann::json config);

  void add_call(const CallContext& context, const std::string& hash,
                const std::vector<std::string>& texts, long prompt_tokens,
                long completion_tokens);

  void add_outcome(const std::string& scope, int round, int agent,
                   const std::optional<Rational>& answer, bool valid,
                   const std::string& explanation, bool degraded);

  void add_final(const std::string& scope, const std::optional<Rational>& answer,
                 const std::string& termination, int rounds_used);

  void write(std::ostream& out) const;
  void write_file(const std::string& path) const;

  std::size_t record_count() const;

 private:
  struct Entry {
    int scope_index = 0;
    int round = 0;
    int agent = 0;
    int kind = 0;  // 0 call, 1 outcome, 2 final
    long seq = 0;
    nlohmann::json record;
  };

  int scope_index_locked(const std::string& scope);

  mutable std::mutex mutex_;
  std::map<std::string, int> scope_order_;
  std::map<std::string, long> seq_counters_;  // per scope.agent.round
  std::vector<Entry> entries_;
  nlohmann::json config_echo_;
};

/**
 * Re-renders the round-by-round outcome tables (agent, answer, verified)
 * and the concluding lines from a trace, without any model calls.
 * Throws std::runtime_error on corrupt or empty traces.
 */
std::string render_trace_tables(std::istream& trace_jsonl);
std::string render_trace_tables_file(const std::string& path);

}  // namespace matot
