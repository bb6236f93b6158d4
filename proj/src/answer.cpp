#include "matot/answer.hpp"

#include <cctype>

namespace matot {

namespace {

bool is_ascii_punct_wrapper(char c) {
  switch (c) {
    case '.': case ',': case '!': case '?': case ';': case ':':
    case ')': case '(': case '[': case ']': case '"': case '\'':
    case '*': case '#': case '=': case '%':
      return true;
    default:
      return false;
  }
}

// Strips one leading currency marker; € and £ are multi-byte in UTF-8.
bool strip_currency_prefix(std::string_view& token) {
  for (std::string_view symbol : {std::string_view("$"), std::string_view("€"),
                                  std::string_view("£"), std::string_view("USD")}) {
    if (token.substr(0, symbol.size()) == symbol) {
      token.remove_prefix(symbol.size());
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<Rational> normalize_numeric_token(std::string_view token) {
  // Peel punctuation and currency wrappers from both ends.
  for (;;) {
    if (!token.empty() && is_ascii_punct_wrapper(token.front())) {
      token.remove_prefix(1);
      continue;
    }
    if (!token.empty() && is_ascii_punct_wrapper(token.back())) {
      token.remove_suffix(1);
      continue;
    }
    if (strip_currency_prefix(token)) continue;
    break;
  }
  if (token.empty()) return std::nullopt;

  // Drop thousands separators; Rational::parse rejects everything else.
  std::string cleaned;
  cleaned.reserve(token.size());
  for (char c : token) {
    if (c != ',') cleaned += c;
  }
  return Rational::parse(cleaned);
}

std::size_t find_last_icase(std::string_view haystack, std::string_view needle) {
  if (needle.empty() || haystack.size() < needle.size()) return std::string_view::npos;
  for (std::size_t start = haystack.size() - needle.size() + 1; start-- > 0;) {
    bool hit = true;
    for (std::size_t i = 0; i < needle.size(); ++i) {
      if (std::tolower(static_cast<unsigned char>(haystack[start + i])) !=
          std::tolower(static_cast<unsigned char>(needle[i]))) {
        hit = false;
        break;
      }
    }
    if (hit) return start + needle.size();
  }
  return std::string_view::npos;
}

std::optional<Rational> extract_answer(std::string_view text) {
  const std::size_t after = find_last_icase(text, "the answer is");
  if (after == std::string_view::npos) return std::nullopt;

  // Skip whitespace, wrapper punctuation and currency up to the number.
  std::string_view rest = text.substr(after);
  for (;;) {
    if (!rest.empty() && (std::isspace(static_cast<unsigned char>(rest.front())) ||
                          is_ascii_punct_wrapper(rest.front()))) {
      rest.remove_prefix(1);
      continue;
    }
    if (strip_currency_prefix(rest)) continue;
    break;
  }

  // Maximal numeric run: sign, digits, decimal points, separators.
  std::size_t len = 0;
  while (len < rest.size()) {
    const char c = rest[len];
    const bool sign_ok = (c == '+' || c == '-') && len == 0;
    if (sign_ok || (c >= '0' && c <= '9') || c == '.' || c == ',') {
      ++len;
    } else {
      break;
    }
  }
  if (len == 0) return std::nullopt;
  return normalize_numeric_token(rest.substr(0, len));
}

}  // namespace matot
