#include "matot/usage.hpp"

namespace matot {

const char* to_string(CallRole role) {
  switch (role) {
    case CallRole::reasoner: return "reasoner";
    case CallRole::evaluator: return "evaluator";
    case CallRole::validator: return "validator";
    case CallRole::baseline: return "baseline";
  }
  return "baseline";
}

std::optional<CallRole> call_role_from_string(const std::string& name) {
  if (name == "reasoner") return CallRole::reasoner;
  if (name == "evaluator") return CallRole::evaluator;
  if (name == "validator") return CallRole::validator;
  if (name == "baseline") return CallRole::baseline;
  return std::nullopt;
}

std::size_t UsageLedger::append(UsageRecord record) {
  std::lock_guard<std::mutex> lock(mutex_);
  records_.push_back(record);
  return records_.size() - 1;
}

std::size_t UsageLedger::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return records_.size();
}

std::vector<UsageRecord> UsageLedger::snapshot() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return records_;
}

UsageTotals UsageLedger::totals(const UsageFilter& filter) const {
  return totals_since(0, filter);
}

UsageTotals UsageLedger::totals_since(std::size_t from_index, const UsageFilter& filter) const {
  std::lock_guard<std::mutex> lock(mutex_);
  UsageTotals out;
  for (std::size_t i = from_index; i < records_.size(); ++i) {
    const UsageRecord& record = records_[i];
    if (!filter.matches(record)) continue;
    out.prompt_tokens += record.prompt_tokens;
    out.completion_tokens += record.completion_tokens;
    out.call_count += record.call_count;
  }
  return out;
}

UsageTotals total_usage(const UsageLedger& ledger, const UsageFilter& filter) {
  return ledger.totals(filter);
}

}  // namespace matot
