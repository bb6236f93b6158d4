#include "matot/reasoner.hpp"

#include <cctype>

namespace matot {

std::optional<int> parse_vote(std::string_view text, int num_choices) {
  if (num_choices < 1) throw std::invalid_argument("parse_vote: num_choices < 1");
  const std::size_t after = find_last_icase(text, "best choice is");
  if (after == std::string_view::npos) return std::nullopt;

  std::string_view rest = text.substr(after);
  std::size_t pos = 0;
  while (pos < rest.size()) {
    const char c = rest[pos];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ':' || c == '*' || c == '#' ||
        c == '(' || c == '[' || c == '"' || c == '\'') {
      ++pos;
    } else {
      break;
    }
  }

  long value = 0;
  std::size_t digits = 0;
  while (pos < rest.size() && rest[pos] >= '0' && rest[pos] <= '9' && digits < 9) {
    value = value * 10 + (rest[pos] - '0');
    ++pos;
    ++digits;
  }
  if (digits == 0) return std::nullopt;
  if (value < 1 || value > num_choices) return std::nullopt;
  return static_cast<int>(value);
}

std::size_t select_best_index(const std::vector<int>& scores) {
  if (scores.empty()) throw std::invalid_argument("select_best: empty scores");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;  // strict: ties keep the lower index
  }
  return best;
}

const ThoughtState& select_best(const std::vector<ThoughtState>& candidates,
                                const std::vector<int>& scores) {
  if (candidates.empty()) throw std::invalid_argument("select_best: empty candidates");
  if (candidates.size() != scores.size()) {
    throw std::invalid_argument("select_best: candidates/scores length mismatch");
  }
  return candidates[select_best_index(scores)];
}

TotReasoner::TotReasoner(ModelGateway& gateway, const PromptLibrary& prompts,
                         int agent_index, int round, std::string scope,
                         CallRole generation_role, CallRole vote_role)
    : gateway_(gateway),
      prompts_(prompts),
      agent_index_(agent_index),
      round_(round),
      scope_(std::move(scope)),
      generation_role_(generation_role),
      vote_role_(vote_role) {}

std::string TotReasoner::generation_prompt(const ThoughtState& state,
                                           const RefinementContext* refinement) const {
  std::string prompt =
      refinement ? prompts_.render_refinement(state.query, refinement->prior_chain,
                                              refinement->feedback, refinement->prior_valid)
                 : prompts_.render_cot(state.query);
  if (!state.steps.empty()) {
    prompt += "\n\nProgress so far:\n";
    for (std::size_t i = 0; i < state.steps.size(); ++i) {
      if (i > 0) prompt += "\n";
      prompt += state.steps[i];
    }
    prompt += "\n\nWrite the next step.";
  }
  return prompt;
}

std::string TotReasoner::vote_instruction(const ThoughtState& parent) const {
  std::string instruction = parent.query;
  if (!parent.steps.empty()) {
    instruction += "\n\nProgress so far:\n";
    for (std::size_t i = 0; i < parent.steps.size(); ++i) {
      if (i > 0) instruction += "\n";
      instruction += parent.steps[i];
    }
  }
  return instruction;
}

std::vector<ThoughtState> TotReasoner::generate_thoughts(const ThoughtState& state, int k,
                                                         const TreeConfig& config,
                                                         const RefinementContext* refinement) {
  if (k < 1) throw std::invalid_argument("generate_thoughts: k < 1");
  if (static_cast<int>(state.steps.size()) >= config.depth) {
    throw std::invalid_argument("generate_thoughts: state already at configured depth");
  }
  for (const std::string& step : state.steps) {
    if (step.empty()) throw std::invalid_argument("generate_thoughts: state has empty step");
  }

  const std::vector<ChatMessage> messages = {user_message(generation_prompt(state, refinement))};
  const CallContext context{generation_role_, round_, agent_index_, scope_};

  std::vector<std::string> thoughts;
  thoughts.reserve(k);
  if (config.batched_generation) {
    SamplingParams params = config.sampling;
    params.n = k;
    const CompletionResult result = gateway_.complete(messages, params, context);
    thoughts = result.texts;
  } else {
    SamplingParams params = config.sampling;
    params.n = 1;
    for (int i = 0; i < k; ++i) {
      const CompletionResult result = gateway_.complete(messages, params, context);
      thoughts.push_back(result.texts.front());
    }
  }

  std::vector<ThoughtState> candidates;
  candidates.reserve(thoughts.size());
  for (std::string& thought : thoughts) {
    ThoughtState next = state;
    next.steps.push_back(thought.empty() ? std::string("(empty thought)") : std::move(thought));
    candidates.push_back(std::move(next));
  }
  return candidates;
}

std::vector<int> TotReasoner::evaluate_states(const ThoughtState& parent,
                                              const std::vector<ThoughtState>& candidates,
                                              int votes_per_level,
                                              const SamplingParams& sampling) {
  if (candidates.size() < 2) {
    throw std::invalid_argument("evaluate_states: need at least two candidates");
  }
  if (votes_per_level < 1) throw std::invalid_argument("evaluate_states: votes_per_level < 1");

  std::vector<std::string> choices;
  choices.reserve(candidates.size());
  for (const ThoughtState& candidate : candidates) {
    choices.push_back(candidate.steps.back());
  }

  const std::string prompt = prompts_.render_vote(vote_instruction(parent), choices);
  const std::vector<ChatMessage> messages = {user_message(prompt)};
  const CallContext context{vote_role_, round_, agent_index_, scope_};

  SamplingParams params = sampling;
  params.n = 1;

  std::vector<int> scores(candidates.size(), 0);
  int parsed_votes = 0;
  for (int v = 0; v < votes_per_level; ++v) {
    const CompletionResult result = gateway_.complete(messages, params, context);
    const std::optional<int> choice =
        parse_vote(result.texts.front(), static_cast<int>(candidates.size()));
    if (choice) {
      ++scores[*choice - 1];
      ++parsed_votes;
    }
  }
  if (parsed_votes == 0) {
    throw EvaluationFailed("evaluate_states: no vote response was parsable");
  }
  return scores;
}

ReasoningChain TotReasoner::run_tree(const std::string& query, const TreeConfig& config,
                                     const RefinementContext* refinement) {
  config.validate();
  if (query.empty()) throw std::invalid_argument("run_tree: empty query");

  ThoughtState state{query, {}};
  bool degraded = false;

  for (int level = 0; level < config.depth; ++level) {
    const ThoughtState parent = state;
    const std::vector<ThoughtState> candidates =
        generate_thoughts(parent, config.width, config, refinement);
    try {
      const std::vector<int> scores =
          evaluate_states(parent, candidates, config.votes_per_level, config.sampling);
      state = candidates[select_best_index(scores)];
    } catch (const EvaluationFailed&) {
      state = candidates.front();
      degraded = true;
    }
  }

  ReasoningChain chain;
  chain.steps = state.steps;
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    if (i > 0) chain.rendered += "\n\n";
    chain.rendered += chain.steps[i];
  }
  chain.answer = extract_answer(chain.steps.back());
  chain.degraded = degraded;
  return chain;
}

}  // namespace matot
