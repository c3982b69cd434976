#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "aspec/error.hpp"

namespace aspec {

// All boundary comparisons (d > eps vs d >= eps) must be exact, so every
// quantity that crosses a comparison is an arbitrary-precision rational.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Int int_pow(Int base, unsigned long e) {
  Int acc = 1;
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

// 2^k as a rational, k may be negative.
inline Rat pow2_rat(long long k) {
  if (k >= 0) return Rat(Int(1) << static_cast<unsigned>(k));
  return Rat(Int(1), Int(1) << static_cast<unsigned>(-k));
}

// floor for nonnegative rationals
inline Int rat_floor_nonneg(const Rat& r) { return rat_num(r) / rat_den(r); }

inline double rat_to_double(const Rat& r) { return static_cast<double>(r); }

// Accepts "p/q", plain integers, and decimal literals ("0.15" -> 3/20).
inline Rat parse_rational(const std::string& text) {
  auto bad = [&](const char* why) -> Rat {
    raise(Errc::parse_error, "rational '" + text + "': " + why);
  };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) return bad("empty");
  auto parse_int = [&](const std::string& t) -> Int {
    if (t.empty()) bad("missing digits");
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) bad("missing digits");
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) bad("not a number");
    return Int(t);
  };
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int num = parse_int(s.substr(0, slash));
    Int den = parse_int(s.substr(slash + 1));
    if (den == 0) bad("zero denominator");
    return Rat(num, den);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
    if (tail.empty()) bad("trailing dot");
    bool neg = !head.empty() && head[0] == '-';
    Int ip = head.empty() || head == "-" || head == "+" ? Int(0) : parse_int(head);
    for (char c : tail)
      if (!std::isdigit(static_cast<unsigned char>(c))) bad("not a number");
    Int frac(tail);
    Int scale = int_pow(10, static_cast<unsigned long>(tail.size()));
    Rat mag = Rat(boost::multiprecision::abs(ip)) + Rat(frac, scale);
    return neg ? -mag : mag;
  }
  return Rat(parse_int(s));
}

inline std::string format_rational(const Rat& r) {
  Int num = rat_num(r), den = rat_den(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace aspec
