#include "matot/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace matot {

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) {
    throw std::invalid_argument("Rational: zero denominator");
  }
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const std::int64_t g = std::gcd(numerator < 0 ? -numerator : numerator, denominator);
  num_ = g ? numerator / g : numerator;
  den_ = g ? denominator / g : denominator;
}

std::optional<Rational> Rational::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }

  std::int64_t integer_part = 0;
  std::size_t int_digits = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    if (int_digits >= 18) return std::nullopt;  // would overflow int64
    integer_part = integer_part * 10 + (text[pos] - '0');
    ++int_digits;
    ++pos;
  }

  std::int64_t frac_part = 0;
  std::int64_t frac_scale = 1;
  std::size_t frac_digits = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      if (frac_digits >= 12) return std::nullopt;
      frac_part = frac_part * 10 + (text[pos] - '0');
      frac_scale *= 10;
      ++frac_digits;
      ++pos;
    }
  }

  if (pos != text.size()) return std::nullopt;           // trailing junk
  if (int_digits == 0 && frac_digits == 0) return std::nullopt;
  if (int_digits > 15) return std::nullopt;              // keep num * scale in range

  std::int64_t numerator = integer_part * frac_scale + frac_part;
  if (negative) numerator = -numerator;
  return Rational(numerator, frac_scale);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);

  // Finite decimal expansion exists iff den = 2^a * 5^b.
  std::int64_t d = den_;
  int twos = 0;
  int fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  const int digits = twos > fives ? twos : fives;
  __int128 scaled = static_cast<__int128>(num_ < 0 ? -num_ : num_);
  for (int i = 0; i < digits; ++i) scaled *= 10;
  scaled /= den_;

  std::string body;
  if (scaled == 0) {
    body = "0";
  } else {
    while (scaled > 0) {
      body.insert(body.begin(), static_cast<char>('0' + static_cast<int>(scaled % 10)));
      scaled /= 10;
    }
  }
  while (static_cast<int>(body.size()) <= digits) body.insert(body.begin(), '0');
  body.insert(body.size() - digits, ".");
  if (num_ < 0) body.insert(body.begin(), '-');
  return body;
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

bool answers_equal(const Rational& a, const Rational& b, double tolerance) {
  if (tolerance <= 0.0) return a == b;
  return std::fabs(a.to_double() - b.to_double()) <= tolerance;
}

}  // namespace matot
