#pragma once

#include <numeric>
#include <vector>

#include "aspec/mistake.hpp"
#include "aspec/systems.hpp"

namespace aspec {

namespace detail {

inline void require_symbolic_pair(const SystemSpec& sys, const Point& x, const Point& y) {
  if (sys.variant == SystemVariant::finite_map) {
    if (!std::holds_alternative<FinitePoint>(x) || !std::holds_alternative<FinitePoint>(y))
      raise(Errc::alphabet_mismatch, "finite map distance needs finite points");
    return;
  }
  if (!std::holds_alternative<SymbolicPoint>(x) || !std::holds_alternative<SymbolicPoint>(y))
    raise(Errc::alphabet_mismatch, "shift distance needs symbolic points");
  const int k = alphabet_size(sys);
  for (const Point* p : {&x, &y}) {
    const auto& sp = std::get<SymbolicPoint>(*p);
    for (int c : sp.pre)
      if (c < 0 || c >= k) raise(Errc::alphabet_mismatch, "symbol outside the alphabet");
    for (int c : sp.per)
      if (c < 0 || c >= k) raise(Errc::alphabet_mismatch, "symbol outside the alphabet");
  }
}

// sum_{i >= 0} [x_i != y_i] * 2^-i, exact: finite head + geometric tail
inline Rat symbolic_distance(const SymbolicPoint& x, const SymbolicPoint& y) {
  const long long lx = static_cast<long long>(x.pre.size());
  const long long ly = static_cast<long long>(y.pre.size());
  const long long L = std::max(lx, ly);
  const long long px = static_cast<long long>(x.per.size());
  const long long py = static_cast<long long>(y.per.size());
  const long long P = std::lcm(px, py);
  Rat head(0);
  for (long long i = 0; i < L; ++i)
    if (symbol_at(x, i) != symbol_at(y, i)) head += pow2_rat(-i);
  Rat block(0);
  for (long long j = 0; j < P; ++j)
    if (symbol_at(x, L + j) != symbol_at(y, L + j)) block += pow2_rat(-j);
  if (block == 0) return head;
  Int two_p = int_pow(Int(2), static_cast<unsigned long>(P));
  Rat tail = pow2_rat(-L) * block * Rat(two_p, two_p - 1);
  return head + tail;
}

}  // namespace detail

inline Rat point_distance(const SystemSpec& sys, const Point& x, const Point& y) {
  detail::require_symbolic_pair(sys, x, y);
  if (sys.variant == SystemVariant::finite_map) {
    std::size_t a = std::get<FinitePoint>(x).id, b = std::get<FinitePoint>(y).id;
    if (a >= sys.fin.labels.size() || b >= sys.fin.labels.size())
      raise(Errc::validation_error, "point id out of range");
    return sys.fin.metric[a][b];
  }
  return detail::symbolic_distance(std::get<SymbolicPoint>(x), std::get<SymbolicPoint>(y));
}

inline Rat orbit_distance(const SystemSpec& sys, const Point& x, const Point& y, long long j) {
  if (j < 0) raise(Errc::precondition_violated, "orbit offset must be >= 0");
  return point_distance(sys, advance_point(sys, x, j), advance_point(sys, y, j));
}

// all of d(T^j x, T^j y) for j = 0..n-1
// symbolic case: one closed form at offset n, then d_j = delta_j + d_{j+1}/2 backwards
inline std::vector<Rat> orbit_distance_profile(const SystemSpec& sys, const Point& x,
                                               const Point& y, long long n) {
  if (n < 1) raise(Errc::precondition_violated, "horizon must be >= 1");
  detail::require_symbolic_pair(sys, x, y);
  std::vector<Rat> d(static_cast<std::size_t>(n));
  if (sys.variant == SystemVariant::finite_map) {
    Point a = x, b = y;
    for (long long j = 0; j < n; ++j) {
      d[static_cast<std::size_t>(j)] = point_distance(sys, a, b);
      a = apply_map(sys, a);
      b = apply_map(sys, b);
    }
    return d;
  }
  const auto& sx = std::get<SymbolicPoint>(x);
  const auto& sy = std::get<SymbolicPoint>(y);
  Rat next = detail::symbolic_distance(advance(sx, n), advance(sy, n));
  for (long long j = n - 1; j >= 0; --j) {
    Rat delta = symbol_at(sx, j) != symbol_at(sy, j) ? Rat(1) : Rat(0);
    next = delta + next / 2;
    d[static_cast<std::size_t>(j)] = next;
  }
  return d;
}

inline Rat bowen_distance(const SystemSpec& sys, const Point& x, const Point& y,
                          const IndexSet& lam) {
  if (lam.members.empty()) raise(Errc::empty_index_set, "index set must be nonempty");
  validate_index_set(lam);
  std::vector<Rat> prof = orbit_distance_profile(sys, x, y, lam.n);
  Rat best(0);
  bool first = true;
  for (long long j : lam.members) {
    const Rat& v = prof[static_cast<std::size_t>(j)];
    if (first || v > best) {
      best = v;
      first = false;
    }
  }
  return best;
}

// #{ j < n : d(T^j x, T^j y) >= eps }   (strict: > eps)
inline long long count_exceedances(const SystemSpec& sys, const Point& x, const Point& y,
                                   long long n, const Rat& eps, bool strict) {
  std::vector<Rat> prof = orbit_distance_profile(sys, x, y, n);
  long long c = 0;
  for (const Rat& v : prof)
    if (strict ? v > eps : v >= eps) ++c;
  return c;
}

// y is in B_n(g; x, eps): at most g(n, eps) offsets with d(T^j x, T^j y) >= eps
inline bool in_mistake_ball(const SystemSpec& sys, const Point& x, const Point& y, long long n,
                            const Rat& eps, const MistakeFunction& g) {
  long long G = g.eval(n, eps);
  if (G >= n) raise(Errc::precondition_violated, "mistake ball needs g(n,eps) < n");
  return count_exceedances(sys, x, y, n, eps, /*strict=*/false) <= G;
}

}  // namespace aspec
