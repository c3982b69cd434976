#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aspec/metrics.hpp"
#include "aspec/separation.hpp"

namespace aspec {

// one block of the shadowing request: approach target's orbit for len steps
// within eps, up to the mistake budget
struct Segment {
  Point target;
  long long len = 1;
  Rat eps;
};

inline void validate_segments(const std::vector<Segment>& segs) {
  if (segs.empty()) raise(Errc::precondition_violated, "need at least one segment");
  for (const Segment& s : segs) {
    if (s.len < 1) raise(Errc::validation_error, "segment length must be >= 1");
    if (s.eps <= 0) raise(Errc::validation_error, "segment eps must be positive");
  }
}

// k_g(eps): the per-tolerance minimum segment length
class GapFunction {
 public:
  static GapFunction constant(long long k) {
    if (k < 1) raise(Errc::validation_error, "gap value must be >= 1");
    GapFunction f;
    f.const_value_ = k;
    return f;
  }

  static GapFunction table(std::vector<std::pair<Rat, long long>> rows) {
    if (rows.empty()) raise(Errc::validation_error, "gap table needs rows");
    GapFunction f;
    f.rows_ = std::move(rows);
    std::sort(f.rows_.begin(), f.rows_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < f.rows_.size(); ++i) {
      if (f.rows_[i].second < 1) raise(Errc::validation_error, "gap value must be >= 1");
      if (i && f.rows_[i].first == f.rows_[i - 1].first)
        raise(Errc::validation_error, "duplicate eps in gap table");
    }
    return f;
  }

  long long eval(const Rat& eps) const {
    if (rows_.empty()) return const_value_;
    for (const auto& r : rows_)
      if (r.first == eps) return r.second;
    raise(Errc::validation_error, "gap function undefined at eps = " + format_rational(eps));
  }

  std::string describe() const {
    if (rows_.empty()) return "const:" + std::to_string(const_value_);
    std::string s = "table:";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i) s += ";";
      s += format_rational(rows_[i].first) + "=" + std::to_string(rows_[i].second);
    }
    return s;
  }

 private:
  GapFunction() = default;
  long long const_value_ = 1;
  std::vector<std::pair<Rat, long long>> rows_;
};

namespace detail {

// membership with the degenerate case g(n,eps) >= n meaning "no constraint"
// (constant-budget fixed-point tracing sits exactly on that boundary, so the
// tracing layer must not reject it)
inline bool segment_satisfied(const SystemSpec& sys, const Point& target, const Point& shifted,
                              long long len, const Rat& eps, const MistakeFunction& g) {
  long long budget = g.eval(len, eps);
  if (budget >= len) return true;
  return count_exceedances(sys, target, shifted, len, eps, /*strict=*/false) <= budget;
}

}  // namespace detail

// z shadows every segment: T^{l_j}(z) lands in the j-th mistake ball
inline bool verify_trace(const SystemSpec& sys, const Point& z,
                         const std::vector<Segment>& segs, const MistakeFunction& g) {
  validate_segments(segs);
  long long offset = 0;
  for (const Segment& s : segs) {
    Point shifted = advance_point(sys, z, offset);
    if (!detail::segment_satisfied(sys, s.target, shifted, s.len, s.eps, g)) return false;
    offset += s.len;
  }
  return true;
}

namespace detail {

struct TraceSearch {
  const SystemSpec& sys;
  const std::vector<Segment>& segs;
  const MistakeFunction& g;
  long long total = 0;
  std::vector<long long> budget;     // symbol-mismatch budget per segment, -1 = unbounded
  std::vector<std::size_t> seg_of;   // position -> segment index
  std::vector<long long> seg_start;  // per segment, offset of its first position
  std::vector<Word> target_window;   // per segment, the target's first len symbols
  Word cur;
  std::vector<long long> mism;       // running mismatch count per segment
  std::optional<Point> found;

  // beta admissibility state: lengths of suffixes still tight against the expansion
  Word expansion;
  std::vector<std::size_t> tight;

  TraceSearch(const SystemSpec& s, const std::vector<Segment>& sg, const MistakeFunction& gg)
      : sys(s), segs(sg), g(gg) {
    for (std::size_t j = 0; j < segs.size(); ++j) {
      seg_start.push_back(total);
      total += segs[j].len;
      // symbol mismatch implies orbit distance >= 1, a mistake only when eps <= 1
      long long b = g.eval(segs[j].len, segs[j].eps);
      if (b >= segs[j].len || segs[j].eps > 1) b = -1;
      budget.push_back(b);
      for (long long t = 0; t < segs[j].len; ++t) seg_of.push_back(j);
      const auto& tp = std::get<SymbolicPoint>(segs[j].target);
      target_window.push_back(window(tp, 0, segs[j].len));
      mism.push_back(0);
    }
    if (sys.variant == SystemVariant::beta_shift)
      expansion = beta_expansion_of_one(sys.beta, std::max(total, sys.expansion_len));
  }

  bool symbol_allowed(int c) const {
    const std::size_t pos = cur.size();
    switch (sys.variant) {
      case SystemVariant::sft:
        return cur.empty() || sft_allows(sys, cur.back(), c);
      case SystemVariant::eventual_fixed:
        return pos < static_cast<std::size_t>(sys.horizon) || c == sys.fixed_symbol;
      case SystemVariant::beta_shift: {
        if (c > expansion[0]) return false;
        for (std::size_t l : tight)
          if (c > expansion[l]) return false;
        return true;
      }
      default:
        return true;
    }
  }

  void try_leaf() {
    // continuation candidate: ride the last target's own tail
    const Segment& last = segs.back();
    const auto& lt = std::get<SymbolicPoint>(last.target);
    SymbolicPoint tail = advance(lt, last.len);
    Word pre = cur;
    pre.insert(pre.end(), tail.pre.begin(), tail.pre.end());
    SymbolicPoint glued = make_point(std::move(pre), tail.per);
    if (point_admissible(sys, glued)) {
      Point cand = glued;
      if (verify_trace(sys, cand, segs, g)) {
        found = cand;
        return;
      }
    }
    Point canon = canonical_point(sys, cur);
    if (verify_trace(sys, canon, segs, g)) found = canon;
  }

  void dfs() {
    if (found) return;
    const std::size_t pos = cur.size();
    if (pos == static_cast<std::size_t>(total)) {
      try_leaf();
      return;
    }
    const std::size_t j = seg_of[pos];
    const long long in_seg = static_cast<long long>(pos) - seg_start[j];
    const int k = alphabet_size(sys);
    for (int c = 0; c < k && !found; ++c) {
      if (!symbol_allowed(c)) continue;
      bool mismatch = c != target_window[j][static_cast<std::size_t>(in_seg)];
      if (mismatch && budget[j] >= 0 && mism[j] + 1 > budget[j]) continue;
      std::vector<std::size_t> saved_tight;
      if (sys.variant == SystemVariant::beta_shift) {
        saved_tight = tight;
        std::vector<std::size_t> next;
        for (std::size_t l : tight)
          if (c == expansion[l]) next.push_back(l + 1);
        if (c == expansion[0]) next.push_back(1);
        tight.swap(next);
      }
      cur.push_back(c);
      if (mismatch) ++mism[j];
      dfs();
      if (mismatch) --mism[j];
      cur.pop_back();
      if (sys.variant == SystemVariant::beta_shift) tight.swap(saved_tight);
    }
  }
};

}  // namespace detail

// deterministic search for a shadowing point: lexicographic DFS over admissible
// words of the combined length, each leaf extended to an eventually periodic
// candidate and verified exactly; empty result is exhaustion of that space
inline std::optional<Point> trace_point(const SystemSpec& sys, const std::vector<Segment>& segs,
                                        const MistakeFunction& g, const GapFunction& kg,
                                        long long cap = default_word_cap()) {
  validate_segments(segs);
  for (const Segment& s : segs)
    if (s.len < kg.eval(s.eps))
      raise(Errc::gap_violated, "segment length " + std::to_string(s.len) +
                                    " below the gap bound " + std::to_string(kg.eval(s.eps)));
  if (sys.variant == SystemVariant::finite_map) {
    for (std::size_t i = 0; i < sys.fin.labels.size(); ++i) {
      Point z = FinitePoint{i};
      if (verify_trace(sys, z, segs, g)) return z;
    }
    return std::nullopt;
  }
  long long total = 0;
  for (const Segment& s : segs) {
    if (!std::holds_alternative<SymbolicPoint>(s.target))
      raise(Errc::alphabet_mismatch, "shift tracing needs symbolic targets");
    total += s.len;
  }
  Int bound = detail::enumeration_bound(sys, total);
  if (bound > cap)
    raise(Errc::cap_exceeded, "tracing would visit " + bound.str() +
                                  " candidates, over the cap of " + std::to_string(cap));
  detail::TraceSearch search(sys, segs, g);
  search.dfs();
  return search.found;
}

struct AlmostSpecVerdict {
  bool holds = true;
  std::vector<Segment> witness;  // first failing tuple when holds is false
  long long tuples_checked = 0;
};

// exhaustive check over a finite space of segment tuples:
// all tuples of up to max_segments segments, targets from the point table,
// eps from the grid, lengths in [kg(eps), kg(eps)+3]
inline AlmostSpecVerdict almost_spec_exhaustive_check(const SystemSpec& sys,
                                                      const MistakeFunction& g,
                                                      const GapFunction& kg, int max_segments,
                                                      const std::vector<Rat>& eps_grid) {
  if (sys.variant != SystemVariant::finite_map)
    raise(Errc::not_applicable, "exhaustive check runs on finite maps");
  if (max_segments < 1 || max_segments > 4)
    raise(Errc::precondition_violated, "max_segments must be in 1..4");
  if (eps_grid.empty()) raise(Errc::precondition_violated, "eps grid must be nonempty");

  std::vector<Segment> slot_choices;
  for (std::size_t p = 0; p < sys.fin.labels.size(); ++p)
    for (const Rat& e : eps_grid) {
      long long lo = kg.eval(e);
      for (long long len = lo; len <= lo + 3; ++len)
        slot_choices.push_back(Segment{FinitePoint{p}, len, e});
    }

  AlmostSpecVerdict verdict;
  const std::size_t C = slot_choices.size();
  for (int m = 1; m <= max_segments; ++m) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
    while (true) {
      std::vector<Segment> tuple;
      for (std::size_t i : idx) tuple.push_back(slot_choices[i]);
      ++verdict.tuples_checked;
      if (!trace_point(sys, tuple, g, kg)) {
        verdict.holds = false;
        verdict.witness = tuple;
        return verdict;
      }
      int pos = m - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] + 1 == C) {
        idx[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
    }
  }
  return verdict;
}

}  // namespace aspec
