#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "slst/error.hpp"

namespace slst {

// Exact rational with positive denominator, always reduced. Epsilon and the
// delay certificate are carried this way so that every floor and every
// comparison stays in integer arithmetic.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw Error(ErrorKind::BadEpsilon, "zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool positive() const { return num > 0; }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  // Accepts "p/q" or a bare integer "p".
  static Rational parse(const std::string& text) {
    auto bad = [&] { return Error(ErrorKind::BadEpsilon, "expected rational p/q, got '" + text + "'"); };
    if (text.empty()) throw bad();
    std::size_t slash = text.find('/');
    try {
      if (slash == std::string::npos) {
        std::size_t used = 0;
        std::int64_t p = std::stoll(text, &used);
        if (used != text.size()) throw bad();
        return Rational(p, 1);
      }
      std::size_t up = 0, uq = 0;
      std::string ps = text.substr(0, slash), qs = text.substr(slash + 1);
      if (ps.empty() || qs.empty()) throw bad();
      std::int64_t p = std::stoll(ps, &up);
      std::int64_t q = std::stoll(qs, &uq);
      if (up != ps.size() || uq != qs.size()) throw bad();
      return Rational(p, q);
    } catch (const std::invalid_argument&) {
      throw bad();
    } catch (const std::out_of_range&) {
      throw bad();
    }
  }

  friend bool operator==(const Rational&, const Rational&) = default;
};

inline bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}
inline bool operator<=(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den <= static_cast<__int128>(b.num) * a.den;
}

// value < r, with `value` an integer quantity (delays).
inline bool int_less_than(std::int64_t value, const Rational& r) {
  return static_cast<__int128>(value) * r.den < static_cast<__int128>(r.num);
}
inline bool int_leq(std::int64_t value, const Rational& r) {
  return static_cast<__int128>(value) * r.den <= static_cast<__int128>(r.num);
}

}  // namespace slst
