#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "aspec/points.hpp"
#include "aspec/rational.hpp"

namespace aspec {

enum class SystemVariant { finite_map, full_shift, sft, beta_shift, eventual_fixed };

inline const char* variant_name(SystemVariant v) {
  switch (v) {
    case SystemVariant::finite_map: return "finite";
    case SystemVariant::full_shift: return "full";
    case SystemVariant::sft: return "sft";
    case SystemVariant::beta_shift: return "beta";
    case SystemVariant::eventual_fixed: return "eventual";
  }
  return "?";
}

struct FiniteMapData {
  std::vector<std::string> labels;
  std::vector<std::size_t> map;            // map[i] = image point id
  std::vector<std::vector<Rat>> metric;    // symmetric, zero diagonal
};

struct SystemSpec {
  SystemVariant variant = SystemVariant::full_shift;
  int k = 2;                               // alphabet size for shift variants
  std::vector<std::vector<int>> transitions;  // sft: 0/1 adjacency, k x k
  Rat beta;                                // beta_shift
  long long expansion_len = 64;            // beta_shift: declared expansion precision
  long long horizon = 1;                   // eventual_fixed: free prefix length N
  int fixed_symbol = 0;                    // eventual_fixed: w
  FiniteMapData fin;                       // finite_map
};

using Point = std::variant<FinitePoint, SymbolicPoint>;

inline bool point_eq(const Point& a, const Point& b) { return a == b; }

inline bool beta_is_integral(const Rat& beta) { return rat_den(beta) == 1; }

inline int alphabet_size(const SystemSpec& sys) {
  switch (sys.variant) {
    case SystemVariant::finite_map:
      return static_cast<int>(sys.fin.labels.size());
    case SystemVariant::full_shift:
    case SystemVariant::sft:
    case SystemVariant::eventual_fixed:
      return sys.k;
    case SystemVariant::beta_shift: {
      Int num = rat_num(sys.beta), den = rat_den(sys.beta);
      Int ceil_b = (num + den - 1) / den;
      return beta_is_integral(sys.beta) ? static_cast<int>(num)
                                        : static_cast<int>(ceil_b);
    }
  }
  return 0;
}

inline void validate_system(const SystemSpec& sys) {
  switch (sys.variant) {
    case SystemVariant::finite_map: {
      const auto& f = sys.fin;
      std::size_t m = f.labels.size();
      if (m == 0) raise(Errc::validation_error, "finite map needs at least one point");
      if (f.map.size() != m) raise(Errc::validation_error, "map table size mismatch");
      for (std::size_t v : f.map)
        if (v >= m) raise(Errc::validation_error, "map image out of range");
      if (f.metric.size() != m) raise(Errc::validation_error, "metric table size mismatch");
      for (std::size_t i = 0; i < m; ++i) {
        if (f.metric[i].size() != m) raise(Errc::validation_error, "metric row size mismatch");
        if (f.metric[i][i] != 0) raise(Errc::validation_error, "metric diagonal must be zero");
        for (std::size_t j = 0; j < m; ++j) {
          if (f.metric[i][j] != f.metric[j][i])
            raise(Errc::validation_error, "metric must be symmetric");
          if (i != j && f.metric[i][j] <= 0)
            raise(Errc::validation_error, "metric must be positive off the diagonal");
        }
      }
      break;
    }
    case SystemVariant::full_shift:
      if (sys.k < 2) raise(Errc::validation_error, "full shift needs alphabet size >= 2");
      if (sys.k > 36) raise(Errc::validation_error, "alphabet size capped at 36");
      break;
    case SystemVariant::sft: {
      if (sys.k < 2) raise(Errc::validation_error, "sft needs alphabet size >= 2");
      if (sys.k > 36) raise(Errc::validation_error, "alphabet size capped at 36");
      if (sys.transitions.size() != static_cast<std::size_t>(sys.k))
        raise(Errc::validation_error, "transition matrix must be k x k");
      std::vector<int> col_sum(sys.k, 0);
      for (int i = 0; i < sys.k; ++i) {
        const auto& row = sys.transitions[static_cast<std::size_t>(i)];
        if (row.size() != static_cast<std::size_t>(sys.k))
          raise(Errc::validation_error, "transition matrix must be k x k");
        int row_sum = 0;
        for (int j = 0; j < sys.k; ++j) {
          if (row[static_cast<std::size_t>(j)] != 0 && row[static_cast<std::size_t>(j)] != 1)
            raise(Errc::validation_error, "transition entries must be 0 or 1");
          row_sum += row[static_cast<std::size_t>(j)];
          col_sum[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j)];
        }
        if (row_sum == 0) raise(Errc::validation_error, "transition matrix has an empty row");
      }
      for (int j = 0; j < sys.k; ++j)
        if (col_sum[static_cast<std::size_t>(j)] == 0)
          raise(Errc::validation_error, "transition matrix has an empty column");
      break;
    }
    case SystemVariant::beta_shift:
      if (sys.beta <= 1) raise(Errc::validation_error, "beta must exceed 1");
      if (sys.beta > 36) raise(Errc::validation_error, "beta capped at 36");
      if (sys.expansion_len < 1)
        raise(Errc::validation_error, "expansion length must be >= 1");
      break;
    case SystemVariant::eventual_fixed:
      if (sys.k < 2) raise(Errc::validation_error, "alphabet size must be >= 2");
      if (sys.k > 36) raise(Errc::validation_error, "alphabet size capped at 36");
      if (sys.horizon < 1) raise(Errc::validation_error, "prefix length must be >= 1");
      if (sys.fixed_symbol < 0 || sys.fixed_symbol >= sys.k)
        raise(Errc::validation_error, "fixed symbol out of alphabet");
      break;
  }
}

inline SystemSpec make_full_shift(int k) {
  SystemSpec s;
  s.variant = SystemVariant::full_shift;
  s.k = k;
  validate_system(s);
  return s;
}

inline SystemSpec make_sft(int k, std::vector<std::vector<int>> transitions) {
  SystemSpec s;
  s.variant = SystemVariant::sft;
  s.k = k;
  s.transitions = std::move(transitions);
  validate_system(s);
  return s;
}

inline SystemSpec make_beta_shift(Rat beta, long long expansion_len = 64) {
  SystemSpec s;
  s.variant = SystemVariant::beta_shift;
  s.beta = std::move(beta);
  s.expansion_len = expansion_len;
  validate_system(s);
  s.k = alphabet_size(s);
  return s;
}

inline SystemSpec make_eventual_fixed(int k, long long horizon, int fixed_symbol) {
  SystemSpec s;
  s.variant = SystemVariant::eventual_fixed;
  s.k = k;
  s.horizon = horizon;
  s.fixed_symbol = fixed_symbol;
  validate_system(s);
  return s;
}

inline SystemSpec make_finite_map(std::vector<std::string> labels, std::vector<std::size_t> map,
                                  std::vector<std::vector<Rat>> metric) {
  SystemSpec s;
  s.variant = SystemVariant::finite_map;
  s.fin = FiniteMapData{std::move(labels), std::move(map), std::move(metric)};
  validate_system(s);
  return s;
}

// two points {a, b}, a -> b, b -> b, d(a,b) = 1
inline SystemSpec build_example1() {
  return make_finite_map({"a", "b"}, {1, 1}, {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
}

// Digits of the expansion of 1 used for the lexicographic admissibility test.
// Integral beta: (beta-1) repeated, which makes the beta = k shift coincide
// with the full k-shift. Otherwise the greedy iteration r <- 1;
// d <- floor(beta*r); r <- beta*r - d, run exactly.
inline Word beta_expansion_of_one(const Rat& beta, long long len) {
  if (beta <= 1) raise(Errc::precondition_violated, "beta must exceed 1");
  if (len < 1) raise(Errc::precondition_violated, "expansion length must be >= 1");
  Word digits;
  digits.reserve(static_cast<std::size_t>(len));
  if (beta_is_integral(beta)) {
    int d = static_cast<int>(rat_num(beta)) - 1;
    digits.assign(static_cast<std::size_t>(len), d);
    return digits;
  }
  Rat r(1);
  for (long long i = 0; i < len; ++i) {
    Rat br = beta * r;
    Int d = rat_floor_nonneg(br);
    digits.push_back(static_cast<int>(d));
    r = br - Rat(d);
  }
  return digits;
}

namespace detail {

inline bool sft_allows(const SystemSpec& sys, int from, int to) {
  return sys.transitions[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)] != 0;
}

// every suffix of w must be lexicographically <= the expansion prefix of its length
inline bool beta_word_admissible(const Word& w, const Word& expansion) {
  const std::size_t n = w.size();
  for (std::size_t start = 0; start < n; ++start) {
    for (std::size_t i = 0; start + i < n; ++i) {
      int e = expansion[i];
      if (w[start + i] < e) break;
      if (w[start + i] > e) return false;
    }
  }
  return true;
}

}  // namespace detail

inline bool is_admissible(const SystemSpec& sys, const Word& word) {
  const int k = alphabet_size(sys);
  for (int c : word)
    if (c < 0 || c >= k) raise(Errc::precondition_violated, "symbol out of alphabet");
  switch (sys.variant) {
    case SystemVariant::full_shift:
      return true;
    case SystemVariant::sft:
      for (std::size_t i = 0; i + 1 < word.size(); ++i)
        if (!detail::sft_allows(sys, word[i], word[i + 1])) return false;
      return true;
    case SystemVariant::beta_shift: {
      if (word.empty()) return true;
      Word e = beta_expansion_of_one(sys.beta,
                                     std::max<long long>(static_cast<long long>(word.size()),
                                                         sys.expansion_len));
      return detail::beta_word_admissible(word, e);
    }
    case SystemVariant::eventual_fixed:
      for (std::size_t i = static_cast<std::size_t>(sys.horizon); i < word.size(); ++i)
        if (word[i] != sys.fixed_symbol) return false;
      return true;
    case SystemVariant::finite_map:
      return word.size() == 1;
  }
  return false;
}

// admissibility of the infinite sequence
inline bool point_admissible(const SystemSpec& sys, const SymbolicPoint& p) {
  switch (sys.variant) {
    case SystemVariant::full_shift:
    case SystemVariant::sft: {
      // transition constraints are local; two period copies cover the wrap
      Word w = p.pre;
      w.insert(w.end(), p.per.begin(), p.per.end());
      w.insert(w.end(), p.per.begin(), p.per.end());
      return is_admissible(sys, w);
    }
    case SystemVariant::beta_shift: {
      // every distinct suffix starts within pre + one period; each needs a
      // full expansion_len window, so unroll the period far enough
      Word w = p.pre;
      const std::size_t need =
          p.pre.size() + p.per.size() + static_cast<std::size_t>(sys.expansion_len);
      while (w.size() < need) w.insert(w.end(), p.per.begin(), p.per.end());
      return is_admissible(sys, w);
    }
    case SystemVariant::eventual_fixed: {
      if (p.per != Word{sys.fixed_symbol}) return false;
      Word w = p.pre;
      w.push_back(sys.fixed_symbol);
      return is_admissible(sys, w);
    }
    case SystemVariant::finite_map:
      raise(Errc::not_applicable, "finite maps have no symbolic points");
  }
  return false;
}

inline Point apply_map(const SystemSpec& sys, const Point& x) {
  if (std::holds_alternative<FinitePoint>(x)) {
    if (sys.variant != SystemVariant::finite_map)
      raise(Errc::alphabet_mismatch, "finite point given to a shift system");
    std::size_t id = std::get<FinitePoint>(x).id;
    if (id >= sys.fin.map.size()) raise(Errc::validation_error, "point id out of range");
    return FinitePoint{sys.fin.map[id]};
  }
  if (sys.variant == SystemVariant::finite_map)
    raise(Errc::alphabet_mismatch, "symbolic point given to a finite map");
  return advance(std::get<SymbolicPoint>(x), 1);
}

inline Point advance_point(const SystemSpec& sys, const Point& x, long long j) {
  if (j < 0) raise(Errc::precondition_violated, "cannot advance backwards");
  if (std::holds_alternative<SymbolicPoint>(x)) {
    if (sys.variant == SystemVariant::finite_map)
      raise(Errc::alphabet_mismatch, "symbolic point given to a finite map");
    return advance(std::get<SymbolicPoint>(x), j);
  }
  Point p = x;
  for (long long i = 0; i < j; ++i) p = apply_map(sys, p);
  return p;
}

inline long long default_word_cap() {
  if (const char* env = std::getenv("ASPEC_CAP")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 1LL << 22;
}

namespace detail {

// candidate-space size the enumerator would have to walk
inline Int enumeration_bound(const SystemSpec& sys, long long n) {
  long long free_len = n;
  if (sys.variant == SystemVariant::eventual_fixed) free_len = std::min(n, sys.horizon);
  return int_pow(Int(alphabet_size(sys)), static_cast<unsigned long>(free_len));
}

}  // namespace detail

// all admissible words of length n, lexicographic
inline std::vector<Word> enumerate_words(const SystemSpec& sys, long long n,
                                         long long cap = default_word_cap()) {
  if (sys.variant == SystemVariant::finite_map)
    raise(Errc::not_applicable, "word enumeration needs a shift system");
  if (n < 1) raise(Errc::precondition_violated, "word length must be >= 1");
  Int bound = detail::enumeration_bound(sys, n);
  if (bound > cap)
    raise(Errc::cap_exceeded, "enumeration would visit " + bound.str() +
                                  " candidates, over the cap of " + std::to_string(cap));
  const int k = alphabet_size(sys);
  std::vector<Word> out;
  Word cur;
  cur.reserve(static_cast<std::size_t>(n));

  if (sys.variant == SystemVariant::beta_shift) {
    Word e = beta_expansion_of_one(sys.beta,
                                   std::max<long long>(n, sys.expansion_len));
    // tight[i] = length of the suffix ending at the current position that still
    // matches the expansion prefix exactly; appending c beyond a tight suffix of
    // length l is inadmissible iff c > e[l]
    std::vector<std::size_t> tight;
    std::function<void()> rec = [&]() {
      if (static_cast<long long>(cur.size()) == n) {
        out.push_back(cur);
        return;
      }
      for (int c = 0; c < k; ++c) {
        bool ok = true;
        for (std::size_t l : tight)
          if (c > e[l]) {
            ok = false;
            break;
          }
        if (!ok) continue;
        if (c > e[0]) continue;  // the new length-1 suffix
        std::vector<std::size_t> next;
        for (std::size_t l : tight)
          if (c == e[l]) next.push_back(l + 1);
        if (c == e[0]) next.push_back(1);
        cur.push_back(c);
        tight.swap(next);
        rec();
        tight.swap(next);
        cur.pop_back();
      }
    };
    rec();
    return out;
  }

  std::function<void()> rec = [&]() {
    if (static_cast<long long>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    const std::size_t pos = cur.size();
    for (int c = 0; c < k; ++c) {
      switch (sys.variant) {
        case SystemVariant::sft:
          if (!cur.empty() && !detail::sft_allows(sys, cur.back(), c)) continue;
          break;
        case SystemVariant::eventual_fixed:
          if (pos >= static_cast<std::size_t>(sys.horizon) && c != sys.fixed_symbol) continue;
          break;
        default:
          break;
      }
      cur.push_back(c);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

namespace detail {

// lexicographically least shortest admissible cycle whose start is reachable
// from `from`; cycles exist because every row of the matrix has a 1
inline Word sft_best_cycle(const SystemSpec& sys, int from) {
  const int k = sys.k;
  std::vector<char> reach(static_cast<std::size_t>(k), 0);
  std::deque<int> q{from};
  reach[static_cast<std::size_t>(from)] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int t = 0; t < k; ++t)
      if (sft_allows(sys, v, t) && !reach[static_cast<std::size_t>(t)]) {
        reach[static_cast<std::size_t>(t)] = 1;
        q.push_back(t);
      }
  }
  for (int len = 1; len <= k; ++len) {
    Word cyc;
    std::function<bool()> rec = [&]() -> bool {
      if (static_cast<int>(cyc.size()) == len)
        return sft_allows(sys, cyc.back(), cyc.front());
      for (int c = 0; c < k; ++c) {
        if (cyc.empty() && !reach[static_cast<std::size_t>(c)]) continue;
        if (!cyc.empty() && !sft_allows(sys, cyc.back(), c)) continue;
        cyc.push_back(c);
        if (rec()) return true;
        cyc.pop_back();
      }
      return false;
    };
    if (rec()) return cyc;
  }
  raise(Errc::no_admissible_extension, "no cycle reachable in the transition graph");
}

// lexicographically least shortest path from -> ... -> to (endpoints excluded)
inline Word sft_bridge(const SystemSpec& sys, int from, int to) {
  if (sft_allows(sys, from, to)) return {};
  const int k = sys.k;
  const int inf = k + 2;
  std::vector<int> dist(static_cast<std::size_t>(k), inf);  // edge count to `to`
  dist[static_cast<std::size_t>(to)] = 0;
  std::deque<int> q{to};
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int u = 0; u < k; ++u)
      if (sft_allows(sys, u, v) && dist[static_cast<std::size_t>(u)] == inf) {
        dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
        q.push_back(u);
      }
  }
  // the first hop is picked explicitly: when from == to, dist[from] is the
  // trivial 0 and cannot seed the walk
  int first = -1, best = inf;
  for (int c = 0; c < k; ++c)
    if (sft_allows(sys, from, c) && dist[static_cast<std::size_t>(c)] < best) {
      best = dist[static_cast<std::size_t>(c)];
      first = c;
    }
  if (first < 0) raise(Errc::no_admissible_extension, "cycle start unreachable");
  Word path{first};
  int at = first;
  while (dist[static_cast<std::size_t>(at)] > 1) {
    for (int c = 0; c < k; ++c)
      if (sft_allows(sys, at, c) &&
          dist[static_cast<std::size_t>(c)] == dist[static_cast<std::size_t>(at)] - 1) {
        path.push_back(c);
        at = c;
        break;
      }
  }
  return path;
}

}  // namespace detail

// extend an admissible word to an eventually periodic admissible point
inline SymbolicPoint canonical_point(const SystemSpec& sys, const Word& word) {
  switch (sys.variant) {
    case SystemVariant::full_shift:
    case SystemVariant::beta_shift:
      return make_point(word, {0});
    case SystemVariant::eventual_fixed:
      return make_point(word, {sys.fixed_symbol});
    case SystemVariant::sft: {
      if (word.empty()) {
        Word cyc = detail::sft_best_cycle(sys, 0);
        // no anchor symbol: least cycle reachable from anywhere
        for (int s = 1; s < sys.k; ++s) {
          Word alt = detail::sft_best_cycle(sys, s);
          if (alt.size() < cyc.size() || (alt.size() == cyc.size() && alt < cyc)) cyc = alt;
        }
        return make_point({}, cyc);
      }
      Word cyc = detail::sft_best_cycle(sys, word.back());
      Word bridge = detail::sft_bridge(sys, word.back(), cyc.front());
      Word pre = word;
      pre.insert(pre.end(), bridge.begin(), bridge.end());
      return make_point(std::move(pre), std::move(cyc));
    }
    case SystemVariant::finite_map:
      raise(Errc::not_applicable, "finite maps have no symbolic points");
  }
  raise(Errc::not_applicable, "unsupported variant");
}

// log of the transition-matrix spectral radius via power iteration on A + I
inline double transfer_matrix_entropy(const SystemSpec& sys) {
  if (sys.variant != SystemVariant::full_shift && sys.variant != SystemVariant::sft)
    raise(Errc::not_applicable, "transfer matrix defined for full shifts and sfts only");
  const int k = sys.k;
  auto at = [&](int i, int j) -> double {
    if (sys.variant == SystemVariant::full_shift) return 1.0;
    return static_cast<double>(sys.transitions[static_cast<std::size_t>(i)]
                                              [static_cast<std::size_t>(j)]);
  };
  std::vector<double> v(static_cast<std::size_t>(k), 1.0), w(static_cast<std::size_t>(k));
  double lambda = 0.0;
  for (int it = 0; it < 200000; ++it) {
    double norm = 0.0;
    for (int i = 0; i < k; ++i) {
      double s = v[static_cast<std::size_t>(i)];  // the +I term keeps iteration aperiodic
      for (int j = 0; j < k; ++j) s += at(i, j) * v[static_cast<std::size_t>(j)];
      w[static_cast<std::size_t>(i)] = s;
      norm = std::max(norm, s);
    }
    for (int i = 0; i < k; ++i) w[static_cast<std::size_t>(i)] /= norm;
    bool settled = std::abs(norm - lambda) <= 1e-9 * norm && it > 3;
    lambda = norm;
    v.swap(w);
    if (settled) break;
  }
  return std::log(lambda - 1.0);
}

inline std::string format_point_for(const SystemSpec& sys, const Point& p) {
  if (std::holds_alternative<FinitePoint>(p)) {
    std::size_t id = std::get<FinitePoint>(p).id;
    if (sys.variant == SystemVariant::finite_map && id < sys.fin.labels.size())
      return sys.fin.labels[id];
    return "#" + std::to_string(id);
  }
  return format_point(std::get<SymbolicPoint>(p));
}

inline Point parse_point_for(const SystemSpec& sys, const std::string& s) {
  if (sys.variant == SystemVariant::finite_map) {
    for (std::size_t i = 0; i < sys.fin.labels.size(); ++i)
      if (sys.fin.labels[i] == s) return FinitePoint{i};
    raise(Errc::parse_error, "unknown point label: " + s);
  }
  SymbolicPoint p = parse_point(s);
  if (!point_admissible(sys, p)) raise(Errc::validation_error, "inadmissible point: " + s);
  return p;
}

}  // namespace aspec
