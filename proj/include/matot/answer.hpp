#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "matot/rational.hpp"

namespace matot {

/**
 * Normalizes one answer token to an exact rational: strips surrounding
 * punctuation and currency markers ($, €, £), drops thousands separators,
 * then parses sign/digits/decimal point. Returns nullopt for anything that
 * is not a number after normalization.
 */
std::optional<Rational> normalize_numeric_token(std::string_view token);

/**
 * Extracts the final answer from a response that honors the "the answer
 * is n" output contract: finds the last case-insensitive occurrence of
 * "the answer is" and normalizes the number that follows. Absent when the
 * phrase is missing or what follows is not a number.
 */
std::optional<Rational> extract_answer(std::string_view text);

/// Position one past the end of the last case-insensitive occurrence of
/// `needle` in `haystack`, or npos. Shared by the verdict and vote parsers.
std::size_t find_last_icase(std::string_view haystack, std::string_view needle);

}  // namespace matot
