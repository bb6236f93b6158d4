#pragma once

#include <atomic>
#include <memory>

#include "matot/backend.hpp"
#include "matot/rate_limiter.hpp"
#include "matot/trace.hpp"
#include "matot/usage.hpp"

namespace matot {

/**
 * The single entry point for model calls. Wraps a backend with usage
 * accounting, optional rate limiting and optional trace emission, so the
 * reasoning layers above never talk to a backend directly.
 *
 * Safe for unrestricted concurrent use; the ledger receives appends in a
 * total order.
 */
class ModelGateway {
 public:
  explicit ModelGateway(std::shared_ptr<ChatBackend> backend,
                        std::shared_ptr<UsageLedger> ledger = nullptr,
                        std::shared_ptr<RateLimiter> limiter = nullptr,
                        std::shared_ptr<TraceCollector> trace = nullptr);

  CompletionResult complete(const std::vector<ChatMessage>& messages,
                            const SamplingParams& params, const CallContext& context);

  /// Same backend, limiter and trace, but a fresh ledger — used by the
  /// benchmark harness to attribute usage per problem.
  ModelGateway with_fresh_ledger() const;

  ChatBackend& backend() { return *backend_; }
  UsageLedger& ledger() { return *ledger_; }
  const UsageLedger& ledger() const { return *ledger_; }
  std::shared_ptr<UsageLedger> ledger_ptr() const { return ledger_; }
  std::shared_ptr<TraceCollector> trace() const { return trace_; }

 private:
  std::shared_ptr<ChatBackend> backend_;
  std::shared_ptr<UsageLedger> ledger_;
  std::shared_ptr<RateLimiter> limiter_;
  std::shared_ptr<TraceCollector> trace_;
  std::shared_ptr<std::atomic<std::uint64_t>> call_counter_;
};

}  // namespace matot
