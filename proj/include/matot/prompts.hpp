#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace matot {

enum class TemplateName { io, cot, vote, verifier, refinement };

/**
 * The five prompt templates of the pipeline. The io/cot/vote/verifier
 * bodies are fixed text (guarded byte-for-byte by golden tests); the
 * refinement preamble is the one template the pipeline needs that has no
 * printed counterpart. All render operations are pure: same inputs, same
 * output, no hidden state.
 *
 * Placeholder substitution is single-pass and non-recursive: brace
 * sequences inside bound values are preserved literally.
 */
class PromptLibrary {
 public:
  PromptLibrary();

  /**
   * Replaces template bodies with the contents of <name>.txt files found
   * in `dir` (io.txt, cot.txt, vote.txt, verifier.txt, refinement.txt).
   * Missing files keep the embedded default.
   */
  void load_overrides(const std::filesystem::path& dir);

  const std::string& body(TemplateName name) const;

  std::string render_io(const std::string& question) const;
  std::string render_cot(const std::string& question) const;

  /// Enumerates choices as "Choice {i}:" blocks between the instruction and
  /// the fixed vote-conclusion text. Requires at least two choices.
  std::string render_vote(const std::string& instruction,
                          const std::vector<std::string>& choices) const;

  /// Appends the question and the serialized chain after the five-criterion
  /// verifier text.
  std::string render_verifier(const std::string& question, const std::string& chain) const;

  /**
   * A cot-shaped prompt that first presents the validator's feedback and the
   * prior attempt. `prior_valid` selects the preamble wording: agents whose
   * chain passed validation still re-run later rounds and must not be told
   * their attempt was invalid. Empty prior_chain is allowed (feedback-only
   * refinement); empty feedback is an error.
   */
  std::string render_refinement(const std::string& question, const std::string& prior_chain,
                                const std::string& feedback, bool prior_valid = false) const;

 private:
  std::string io_;
  std::string cot_;
  std::string vote_;
  std::string verifier_;
  std::string refinement_;
};

}  // namespace matot
