#include "matot/gateway.hpp"

#include <stdexcept>

namespace matot {

ModelGateway::ModelGateway(std::shared_ptr<ChatBackend> backend,
                           std::shared_ptr<UsageLedger> ledger,
                           std::shared_ptr<RateLimiter> limiter,
                           std::shared_ptr<TraceCollector> trace)
    : backend_(std::move(backend)),
      ledger_(ledger ? std::move(ledger) : std::make_shared<UsageLedger>()),
      limiter_(std::move(limiter)),
      trace_(std::move(trace)),
      call_counter_(std::make_shared<std::atomic<std::uint64_t>>(0)) {
  if (!backend_) throw std::invalid_argument("ModelGateway: null backend");
}

CompletionResult ModelGateway::complete(const std::vector<ChatMessage>& messages,
                                        const SamplingParams& params,
                                        const CallContext& context) {
  if (messages.empty()) throw std::invalid_argument("complete: messages are empty");
  for (const ChatMessage& message : messages) {
    if (message.content.empty()) {
      throw std::invalid_argument("complete: message with empty content");
    }
  }
  params.validate();

  RateLimiter::Ticket ticket(limiter_.get());
  CompletionResult result = backend_->complete(messages, params, context);
  result.call_index = call_counter_->fetch_add(1);

  if (static_cast<int>(result.texts.size()) != params.n) {
    throw BackendError(BackendErrorKind::malformed_payload,
                       backend_->id() + ": expected " + std::to_string(params.n) +
                           " texts, got " + std::to_string(result.texts.size()));
  }

  ledger_->append(UsageRecord{context.role, context.round, context.agent,
                              result.prompt_tokens, result.completion_tokens, 1});
  if (trace_) {
    trace_->add_call(context, prompt_hash(messages), result.texts, result.prompt_tokens,
                     result.completion_tokens);
  }
  return result;
}

ModelGateway ModelGateway::with_fresh_ledger() const {
  ModelGateway copy(backend_, std::make_shared<UsageLedger>(), limiter_, trace_);
  copy.call_counter_ = call_counter_;
  return copy;
}

}  // namespace matot
