#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "matot/answer.hpp"
#include "matot/gateway.hpp"
#include "matot/prompts.hpp"

namespace matot {

/// The problem plus the reasoning steps accumulated so far.
struct ThoughtState {
  std::string query;
  std::vector<std::string> steps;
};

struct TreeConfig {
  int depth = 2;
  int width = 5;
  int votes_per_level = 1;
  SamplingParams sampling{1.0, 1.0, 1, 0};
  /// One n=k call per level instead of k single-completion calls. Off by
  /// default so scripted fixtures replay one response per call.
  bool batched_generation = false;

  void validate() const {
    if (depth < 1) throw std::invalid_argument("TreeConfig: depth < 1");
    if (width < 2) throw std::invalid_argument("TreeConfig: width < 2 (width 1 is CoT)");
    if (votes_per_level < 1) throw std::invalid_argument("TreeConfig: votes_per_level < 1");
    sampling.validate();
  }
};

/// The per-level winners, their concatenation, and the answer parsed from
/// the last step. `degraded` marks runs where a level's votes were all
/// unparsable and the first candidate was taken instead.
struct ReasoningChain {
  std::vector<std::string> steps;
  std::string rendered;
  std::optional<Rational> answer;
  bool degraded = false;
};

/// Carried by agents into rounds after a failed consensus.
struct RefinementContext {
  std::string feedback;
  std::string prior_chain;
  bool prior_valid = false;
};

/// Raised internally when every vote of a level fails to parse; run_tree
/// converts it into the first-candidate fallback.
class EvaluationFailed : public std::runtime_error {
 public:
  explicit EvaluationFailed(const std::string& message) : std::runtime_error(message) {}
};

/// Parses the trailing "The best choice is {s}" vote conclusion. Returns the
/// 1-based id from the last occurrence, or nullopt when missing or out of
/// [1, num_choices].
std::optional<int> parse_vote(std::string_view text, int num_choices);

/// Argmax over scores; ties break to the lowest index. Throws on empty or
/// mismatched inputs.
std::size_t select_best_index(const std::vector<int>& scores);
const ThoughtState& select_best(const std::vector<ThoughtState>& candidates,
                                const std::vector<int>& scores);

/**
 * One Reasoner agent: builds a thought tree level by level, scoring the
 * sampled continuations by vote and expanding only the winner, then emits
 * the chain of per-level winners.
 */
class TotReasoner {
 public:
  TotReasoner(ModelGateway& gateway, const PromptLibrary& prompts, int agent_index = 1,
              int round = 1, std::string scope = "",
              CallRole generation_role = CallRole::reasoner,
              CallRole vote_role = CallRole::evaluator);

  std::vector<ThoughtState> generate_thoughts(const ThoughtState& state, int k,
                                              const TreeConfig& config,
                                              const RefinementContext* refinement = nullptr);

  std::vector<int> evaluate_states(const ThoughtState& parent,
                                   const std::vector<ThoughtState>& candidates,
                                   int votes_per_level, const SamplingParams& sampling);

  ReasoningChain run_tree(const std::string& query, const TreeConfig& config,
                          const RefinementContext* refinement = nullptr);

 private:
  std::string generation_prompt(const ThoughtState& state,
                                const RefinementContext* refinement) const;
  std::string vote_instruction(const ThoughtState& parent) const;

  ModelGateway& gateway_;
  const PromptLibrary& prompts_;
  int agent_index_;
  int round_;
  std::string scope_;
  CallRole generation_role_;
  CallRole vote_role_;
};

}  // namespace matot
