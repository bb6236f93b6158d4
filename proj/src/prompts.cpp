#include "matot/prompts.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace matot {

namespace {

constexpr const char* kIoTemplate =
    R"(Answer the following math problem. Your response should
conclude with "the answer is n", where n is a number:
{input})";

constexpr const char* kCotTemplate =
    R"(Answer the following question: {input}
Make a strategy, then write. Your output should be in
the following format:

Strategy:
Your strategy about how to answer the question.

Answer:
Your answer to the question. It should end with
"the answer is n", where n is a number.)";

constexpr const char* kVoteTemplate =
    R"(Given an instruction and several choices, decide which
choice is most promising. Analyze each choice in detail,
then conclude in the last line "The best choice is {s}",
where s the integer id of the choice.)";

constexpr const char* kVerifierTemplate =
    R"(As a critical mathematical reasoning verifier, evaluate
the following thought process, which builds upon previous
steps to reach a final conclusion. Focus on:

1. **Question Relevance**:
   - Ensure the entire reasoning process directly
     addresses the original question.
   - Check if the final answer actually solves what
     was asked.

2. **Reasoning Progression**:
   - Assess logical flow and consistency, especially
     in final steps.
   - Verify mathematical operations' correctness and
     appropriateness.
   - Identify logical fallacies or unjustified leaps.

3. **Factual Accuracy**:
   - Check accuracy and relevance of facts and numbers,
     particularly in final calculations.
   - Spot any misuse of mathematical concepts.

4. **Completeness**:
   - Ensure all necessary aspects are addressed,
     particularly in concluding thoughts.
   - Identify significant omissions that could affect
     the result.

5. **Critical Assessment**:
   - Actively seek potential errors or weak points.
   - Don't hesitate to invalidate reasoning if
     significant issues are found.

Provide a holistic evaluation of the entire reasoning
process, from start to finish. Conclude with
"Reasoning is Valid" only if the entire process is
relevant, logically sound, and error-free. Otherwise,
conclude with "Reasoning is Invalid" and briefly
explain why.)";

constexpr const char* kRefinementTemplate =
    R"(Your previous attempt was judged invalid for the following reason:
{feedback})";

constexpr const char* kRefinementValidPreamble =
    R"(Your previous reasoning was judged valid. The validator noted:
{feedback})";

// Single pass over the template; bound values are inserted verbatim and
// never re-scanned, so braces inside them stay literal.
std::string replace_slot(const std::string& body, const std::string& marker,
                         const std::string& value) {
  std::string out;
  out.reserve(body.size() + value.size());
  std::size_t pos = 0;
  for (;;) {
    const std::size_t hit = body.find(marker, pos);
    if (hit == std::string::npos) {
      out.append(body, pos, std::string::npos);
      return out;
    }
    out.append(body, pos, hit - pos);
    out += value;
    pos = hit + marker.size();
  }
}

const char* template_filename(TemplateName name) {
  switch (name) {
    case TemplateName::io: return "io.txt";
    case TemplateName::cot: return "cot.txt";
    case TemplateName::vote: return "vote.txt";
    case TemplateName::verifier: return "verifier.txt";
    case TemplateName::refinement: return "refinement.txt";
  }
  return "";
}

}  // namespace

PromptLibrary::PromptLibrary()
    : io_(kIoTemplate),
      cot_(kCotTemplate),
      vote_(kVoteTemplate),
      verifier_(kVerifierTemplate),
      refinement_(kRefinementTemplate) {}

void PromptLibrary::load_overrides(const std::filesystem::path& dir) {
  const auto load = [&dir](TemplateName name, std::string& slot) {
    const std::filesystem::path path = dir / template_filename(name);
    std::ifstream in(path, std::ios::binary);
    if (!in) return;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    slot = buffer.str();
  };
  load(TemplateName::io, io_);
  load(TemplateName::cot, cot_);
  load(TemplateName::vote, vote_);
  load(TemplateName::verifier, verifier_);
  load(TemplateName::refinement, refinement_);
}

const std::string& PromptLibrary::body(TemplateName name) const {
  switch (name) {
    case TemplateName::io: return io_;
    case TemplateName::cot: return cot_;
    case TemplateName::vote: return vote_;
    case TemplateName::verifier: return verifier_;
    case TemplateName::refinement: return refinement_;
  }
  return io_;
}

std::string PromptLibrary::render_io(const std::string& question) const {
  if (question.empty()) throw std::invalid_argument("render_io: empty question");
  return replace_slot(io_, "{input}", question);
}

std::string PromptLibrary::render_cot(const std::string& question) const {
  if (question.empty()) throw std::invalid_argument("render_cot: empty question");
  return replace_slot(cot_, "{input}", question);
}

std::string PromptLibrary::render_vote(const std::string& instruction,
                                       const std::vector<std::string>& choices) const {
  if (choices.size() < 2) {
    throw std::invalid_argument("render_vote: need at least two choices");
  }
  std::string out = instruction;
  out += "\n";
  for (std::size_t i = 0; i < choices.size(); ++i) {
    out += "\nChoice " + std::to_string(i + 1) + ":\n";
    out += choices[i];
    out += "\n";
  }
  out += "\n";
  out += vote_;
  return out;
}

std::string PromptLibrary::render_verifier(const std::string& question,
                                           const std::string& chain) const {
  if (chain.empty()) throw std::invalid_argument("render_verifier: empty chain");
  std::string out = verifier_;
  out += "\n\nQuestion:\n";
  out += question;
  out += "\n\nThought process:\n";
  out += chain;
  return out;
}

std::string PromptLibrary::render_refinement(const std::string& question,
                                             const std::string& prior_chain,
                                             const std::string& feedback,
                                             bool prior_valid) const {
  if (feedback.empty()) throw std::invalid_argument("render_refinement: empty feedback");
  std::string out = replace_slot(prior_valid ? kRefinementValidPreamble : refinement_,
                                 "{feedback}", feedback);
  if (!prior_chain.empty()) {
    out += "\n\nYour previous attempt was:\n";
    out += prior_chain;
  }
  out += prior_valid ? "\n\nKeep what is sound, re-check the calculation, then answer again."
                     : "\n\nAddress the cited flaws in your new attempt.";
  out += "\n\n";
  out += render_cot(question);
  return out;
}

}  // namespace matot
