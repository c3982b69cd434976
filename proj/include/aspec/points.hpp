#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "aspec/error.hpp"

namespace aspec {

using Word = std::vector<int>;

// pre . per . per . per ...  (per nonempty)
//
// Canonical form so operator== is sequence equality:
//   1. per is primitive (not a power of a shorter word)
//   2. the preperiod cannot be shortened (pre.back() != per.back())
struct SymbolicPoint {
  Word pre;
  Word per;

  bool operator==(const SymbolicPoint& o) const { return pre == o.pre && per == o.per; }
  bool operator!=(const SymbolicPoint& o) const { return !(*this == o); }
};

struct FinitePoint {
  std::size_t id = 0;
  bool operator==(const FinitePoint& o) const { return id == o.id; }
  bool operator!=(const FinitePoint& o) const { return id != o.id; }
};

namespace detail {

// shortest u with w = u^m
inline Word primitive_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t len = 1; len <= n; ++len) {
    if (n % len) continue;
    bool ok = true;
    for (std::size_t i = len; i < n && ok; ++i)
      if (w[i] != w[i - len]) ok = false;
    if (ok) return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len));
  }
  return w;
}

}  // namespace detail

inline SymbolicPoint make_point(Word pre, Word per) {
  if (per.empty()) raise(Errc::validation_error, "period must be nonempty");
  per = detail::primitive_root(per);
  while (!pre.empty() && pre.back() == per.back()) {
    pre.pop_back();
    std::rotate(per.begin(), per.end() - 1, per.end());
  }
  return SymbolicPoint{std::move(pre), std::move(per)};
}

inline int symbol_at(const SymbolicPoint& p, long long i) {
  if (i < 0) raise(Errc::precondition_violated, "negative sequence index");
  const long long pl = static_cast<long long>(p.pre.size());
  if (i < pl) return p.pre[static_cast<std::size_t>(i)];
  return p.per[static_cast<std::size_t>((i - pl) % static_cast<long long>(p.per.size()))];
}

// T^k: drop the first k symbols
inline SymbolicPoint advance(const SymbolicPoint& p, long long k) {
  if (k < 0) raise(Errc::precondition_violated, "cannot advance backwards");
  const long long pl = static_cast<long long>(p.pre.size());
  if (k <= pl)
    return make_point(Word(p.pre.begin() + static_cast<std::ptrdiff_t>(k), p.pre.end()), p.per);
  long long r = (k - pl) % static_cast<long long>(p.per.size());
  Word rot(p.per.begin() + static_cast<std::ptrdiff_t>(r), p.per.end());
  rot.insert(rot.end(), p.per.begin(), p.per.begin() + static_cast<std::ptrdiff_t>(r));
  return make_point({}, std::move(rot));
}

inline Word window(const SymbolicPoint& p, long long start, long long len) {
  Word w;
  w.reserve(static_cast<std::size_t>(len));
  for (long long i = 0; i < len; ++i) w.push_back(symbol_at(p, start + i));
  return w;
}

namespace detail {

inline char symbol_char(int s) {
  if (s >= 0 && s <= 9) return static_cast<char>('0' + s);
  if (s >= 10 && s < 36) return static_cast<char>('a' + (s - 10));
  raise(Errc::validation_error, "symbol out of printable range");
}

inline int char_symbol(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return 10 + (c - 'a');
  raise(Errc::parse_error, std::string("bad symbol character '") + c + "'");
}

}  // namespace detail

// "pre(per)", e.g. "10100101(0)"; empty preperiod allowed: "(01)"
inline std::string format_point(const SymbolicPoint& p) {
  std::string s;
  for (int v : p.pre) s += detail::symbol_char(v);
  s += '(';
  for (int v : p.per) s += detail::symbol_char(v);
  s += ')';
  return s;
}

inline SymbolicPoint parse_point(const std::string& s) {
  auto open = s.find('(');
  auto close = s.find(')');
  if (open == std::string::npos || close == std::string::npos || close != s.size() - 1 ||
      close <= open + 1)
    raise(Errc::parse_error, "point must look like pre(per) with nonempty per: " + s);
  Word pre, per;
  for (std::size_t i = 0; i < open; ++i) pre.push_back(detail::char_symbol(s[i]));
  for (std::size_t i = open + 1; i < close; ++i) per.push_back(detail::char_symbol(s[i]));
  return make_point(std::move(pre), std::move(per));
}

inline std::string format_word(const Word& w) {
  std::string s;
  for (int v : w) s += detail::symbol_char(v);
  return s;
}

}  // namespace aspec
