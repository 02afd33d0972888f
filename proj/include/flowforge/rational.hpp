#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "flowforge/errors.hpp"

namespace flowforge {

// Exact nonnegative-friendly rational in lowest terms; den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
    if (den == 0) throw InvalidArgument("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  // "p/q", always with an explicit denominator.
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  static Rational parse(const std::string& s) {
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(std::stoll(s));
      return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad rational '" + s + "'");
    }
  }

  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den <=> static_cast<__int128>(b.num) * a.den;
  }
};

// Smallest integer >= num/den for den > 0.
inline std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
  return num >= 0 ? (num + den - 1) / den : -((-num) / den);
}

}  // namespace flowforge
