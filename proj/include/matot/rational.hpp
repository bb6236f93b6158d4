#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace matot {

/**
 * Exact rational number used as the identity of a final answer.
 *
 * Benchmark gold values and model answers are integers or short decimals,
 * so a normalized int64 numerator/denominator pair is sufficient. Equality
 * and ordering are exact; no floating-point comparison is involved unless
 * the caller opts into a tolerance.
 */
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t numerator, std::int64_t denominator);

  static Rational from_int(std::int64_t value) { return Rational(value, 1); }

  /**
   * Parses a plain numeric literal: optional sign, digits, optional
   * fractional part ("26", "-3", "26.5", ".5"). Commas, currency symbols
   * and surrounding punctuation must already be stripped (see
   * normalize_numeric_token). Returns nullopt on anything else.
   */
  static std::optional<Rational> parse(std::string_view text);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /**
   * Canonical text form: "26" for integers, exact decimal ("26.5") when the
   * denominator is of the form 2^a * 5^b, otherwise "num/den".
   */
  std::string to_string() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;  // always > 0; gcd(num_, den_) == 1
};

/// True when |a - b| <= tolerance; tolerance 0 means exact rational equality.
bool answers_equal(const Rational& a, const Rational& b, double tolerance);

}  // namespace matot

template <>
struct std::hash<matot::Rational> {
  std::size_t operator()(const matot::Rational& r) const noexcept {
    std::size_t h = std::hash<std::int64_t>{}(r.numerator());
    return h * 1315423911u ^ std::hash<std::int64_t>{}(r.denominator());
  }
};
