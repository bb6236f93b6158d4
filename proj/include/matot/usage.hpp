#pragma once

#include <cstddef>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace matot {

/// Which part of the pipeline issued a model call.
enum class CallRole { reasoner, evaluator, validator, baseline };

const char* to_string(CallRole role);
std::optional<CallRole> call_role_from_string(const std::string& name);

struct UsageRecord {
  CallRole role = CallRole::baseline;
  int round = 0;  // 0 when not attributable to a round
  int agent = 0;  // 0 when not attributable to an agent
  long prompt_tokens = 0;
  long completion_tokens = 0;
  long call_count = 1;
};

struct UsageTotals {
  long prompt_tokens = 0;
  long completion_tokens = 0;
  long call_count = 0;

  UsageTotals& operator+=(const UsageTotals& other) {
    prompt_tokens += other.prompt_tokens;
    completion_tokens += other.completion_tokens;
    call_count += other.call_count;
    return *this;
  }
  friend bool operator==(const UsageTotals&, const UsageTotals&) = default;
};

struct UsageFilter {
  std::optional<CallRole> role;
  std::optional<int> round;

  bool matches(const UsageRecord& record) const {
    if (role && *role != record.role) return false;
    if (round && *round != record.round) return false;
    return true;
  }
};

/**
 * Append-only record of model calls. Appends may come from concurrently
 * running agents; the internal mutex gives them a total order. Records are
 * never mutated after append.
 */
class UsageLedger {
 public:
  std::size_t append(UsageRecord record);

  std::size_t size() const;
  std::vector<UsageRecord> snapshot() const;

  UsageTotals totals(const UsageFilter& filter = {}) const;
  /// Totals over records appended at or after `from_index`.
  UsageTotals totals_since(std::size_t from_index, const UsageFilter& filter = {}) const;

 private:
  mutable std::mutex mutex_;
  std::vector<UsageRecord> records_;
};

/// Exact sums over matching records; empty ledger yields all zeros.
UsageTotals total_usage(const UsageLedger& ledger, const UsageFilter& filter = {});

}  // namespace matot
