#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aspec/tracing.hpp"

namespace aspec {

struct CollapseWitness {
  Point fixed_point;
  long long horizon = 1;  // least N with: every pair merges at some i <= N-1
};

struct CollapseOutcome {
  bool ok = false;
  CollapseWitness witness;
  std::pair<Point, Point> counterexample;  // orbits that never merge, when !ok
};

namespace detail {

inline std::vector<Point> collapse_candidates(const SystemSpec& sys, long long cap) {
  if (sys.variant == SystemVariant::finite_map) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < sys.fin.labels.size(); ++i) pts.push_back(FinitePoint{i});
    return pts;
  }
  if (sys.variant == SystemVariant::eventual_fixed)
    return separation_candidates(sys, sys.horizon, cap);
  raise(Errc::not_applicable, "collapse check runs on finite maps and eventually fixed shifts");
}

// least i <= bound with T^i x = T^i y, or -1
inline long long first_merge(const SystemSpec& sys, const Point& x, const Point& y,
                             long long bound) {
  Point a = x, b = y;
  for (long long i = 0; i <= bound; ++i) {
    if (point_eq(a, b)) return i;
    a = apply_map(sys, a);
    b = apply_map(sys, b);
  }
  return -1;
}

}  // namespace detail

// Try to certify: some N has every orbit pair merged by step N-1. If all pairs
// merge, image sizes strictly shrink, so merging happens within |X| steps and
// T^{N-1} is constant; its value is the fixed point.
inline CollapseOutcome check_collapse_condition(const SystemSpec& sys,
                                                long long cap = default_word_cap()) {
  std::vector<Point> pts = detail::collapse_candidates(sys, cap);
  const long long bound = sys.variant == SystemVariant::eventual_fixed
                              ? sys.horizon
                              : static_cast<long long>(pts.size());
  CollapseOutcome out;
  long long worst = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      long long t = detail::first_merge(sys, pts[i], pts[j], bound);
      if (t < 0) {
        out.ok = false;
        out.counterexample = {pts[i], pts[j]};
        return out;
      }
      worst = std::max(worst, t);
    }
  out.ok = true;
  out.witness.horizon = worst + 1;
  out.witness.fixed_point = advance_point(sys, pts.front(), worst);
  if (!point_eq(apply_map(sys, out.witness.fixed_point), out.witness.fixed_point))
    raise(Errc::validation_error, "merged orbit value is not fixed");
  return out;
}

struct StabilizationRow {
  Rat eps;
  long long count = 0;  // s_N, equal to s_n for every checked n
};

struct StabilizationReport {
  bool ok = true;
  long long horizon = 1;
  long long n_max = 1;
  std::vector<StabilizationRow> rows;
  long long violation_n = 0;  // when !ok: first (n, eps) where s_n deviates
  Rat violation_eps;
  long long violation_expected = 0, violation_got = 0;
  double slope = 0.0;  // stabilized counts give zero slope outright
};

// checks s_n(X, eps) = s_N(X, eps) exactly for N <= n <= n_max over the grid
inline StabilizationReport zero_entropy_witness(const SystemSpec& sys,
                                                const CollapseWitness& witness, long long n_max,
                                                const std::vector<Rat>& eps_grid,
                                                long long cap = default_word_cap()) {
  if (witness.horizon < 1) raise(Errc::invalid_certificate, "horizon must be >= 1");
  if (!point_eq(apply_map(sys, witness.fixed_point), witness.fixed_point))
    raise(Errc::invalid_certificate, "witness point is not fixed");
  CollapseOutcome chk = check_collapse_condition(sys, cap);
  if (!chk.ok || chk.witness.horizon > witness.horizon)
    raise(Errc::invalid_certificate, "orbits do not all merge by the witness horizon");
  if (n_max < witness.horizon)
    raise(Errc::precondition_violated, "n_max must reach the witness horizon");
  if (eps_grid.empty()) raise(Errc::precondition_violated, "eps grid must be nonempty");

  StabilizationReport rep;
  rep.horizon = witness.horizon;
  rep.n_max = n_max;
  for (const Rat& e : eps_grid) {
    long long base =
        max_separated(sys, witness.horizon, e, std::nullopt, /*exact=*/true, cap).count;
    for (long long n = witness.horizon + 1; n <= n_max; ++n) {
      long long cnt = max_separated(sys, n, e, std::nullopt, /*exact=*/true, cap).count;
      if (cnt != base) {
        rep.ok = false;
        rep.violation_n = n;
        rep.violation_eps = e;
        rep.violation_expected = base;
        rep.violation_got = cnt;
        return rep;
      }
    }
    rep.rows.push_back(StabilizationRow{e, base});
  }
  return rep;
}

// separated-pair witness for positive entropy
struct Certificate {
  Point x, y;
  long long n = 1;  // the N of the bound log 2 / N
  Rat sigma, delta;
  MistakeFunction g;
  GapFunction kg;
};

inline void validate_certificate(const SystemSpec& sys, const Certificate& cert) {
  if (cert.delta <= 0 || cert.sigma <= 2 * cert.delta)
    raise(Errc::invalid_certificate, "need sigma > 2*delta > 0");
  if (cert.n < 1) raise(Errc::invalid_certificate, "horizon must be >= 1");
  if (cert.n < cert.kg.eval(cert.delta))
    raise(Errc::invalid_certificate, "horizon below the gap bound at delta");
  for (const Point* p : {&cert.x, &cert.y}) {
    if (std::holds_alternative<SymbolicPoint>(*p)) {
      if (!point_admissible(sys, std::get<SymbolicPoint>(*p)))
        raise(Errc::invalid_certificate, "certificate point not admissible");
    } else if (std::get<FinitePoint>(*p).id >= sys.fin.labels.size()) {
      raise(Errc::invalid_certificate, "certificate point id out of range");
    }
  }
  if (!is_g_separated(sys, cert.x, cert.y, cert.n, cert.sigma, cert.g.doubled()))
    raise(Errc::invalid_certificate, "pair is not separated under the doubled mistake bound");
}

// natural-log entropy bound carried by a certificate
inline double entropy_lower_bound(const Certificate& cert) {
  if (cert.delta <= 0 || cert.sigma <= 2 * cert.delta)
    raise(Errc::invalid_certificate, "need sigma > 2*delta > 0");
  if (cert.n < 1 || cert.n < cert.kg.eval(cert.delta))
    raise(Errc::invalid_certificate, "horizon below the gap bound at delta");
  return std::log(2.0) / static_cast<double>(cert.n);
}

// deterministic scan: delta descending, sigma = 3*delta, N ascending from the
// gap bound, candidate pairs lexicographic; first hit wins
inline std::optional<Certificate> certificate_search(const SystemSpec& sys,
                                                     const MistakeFunction& g,
                                                     const GapFunction& kg,
                                                     const std::vector<Rat>& delta_grid,
                                                     long long n_cap,
                                                     long long cap = default_word_cap()) {
  if (delta_grid.empty()) raise(Errc::precondition_violated, "delta grid must be nonempty");
  if (n_cap < 1) raise(Errc::precondition_violated, "n_cap must be >= 1");
  std::vector<Rat> grid = delta_grid;
  std::sort(grid.begin(), grid.end(), std::greater<Rat>());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  MistakeFunction g2 = g.doubled();
  for (const Rat& delta : grid) {
    Rat sigma = 3 * delta;
    for (long long n = std::max<long long>(1, kg.eval(delta)); n <= n_cap; ++n) {
      std::vector<Point> pts = separation_candidates(sys, n, cap);
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
          if (is_g_separated(sys, pts[i], pts[j], n, sigma, g2))
            return Certificate{pts[i], pts[j], n, sigma, delta, g, kg};
    }
  }
  return std::nullopt;
}

struct FamilyReport {
  std::vector<Point> points;        // one traced point per word over {x, y}
  std::vector<std::string> labels;  // the words, e.g. "xyx"
  long long horizon = 0;            // m * N
  Rat eps;                          // sigma - 2*delta
  long long pairs_total = 0;
  long long pairs_separated = 0;
  bool all_separated = true;
  long long lower_bound = 1;  // 2^m, the implied separated-set size
};

// realize all 2^m block words over {x, y} by traced points and verify that
// distinct traced points are (m*N, sigma - 2*delta)-separated, pair by pair
inline FamilyReport build_separated_family(const SystemSpec& sys, const Certificate& cert,
                                           int m, long long cap = default_word_cap()) {
  if (m < 0) raise(Errc::precondition_violated, "m must be >= 0");
  validate_certificate(sys, cert);
  FamilyReport rep;
  rep.horizon = static_cast<long long>(m) * cert.n;
  rep.eps = cert.sigma - 2 * cert.delta;
  rep.lower_bound = 1LL << m;
  if (m == 0) return rep;
  for (long long xi = 0; xi < (1LL << m); ++xi) {
    std::string label;
    std::vector<Segment> segs;
    for (int b = m - 1; b >= 0; --b) {
      bool use_y = (xi >> b) & 1;
      label += use_y ? 'y' : 'x';
      segs.push_back(Segment{use_y ? cert.y : cert.x, cert.n, cert.delta});
    }
    std::optional<Point> z = trace_point(sys, segs, cert.g, cert.kg, cap);
    if (!z)
      raise(Errc::trace_failed, "no tracing point for the block word " + label);
    rep.points.push_back(*z);
    rep.labels.push_back(label);
  }
  for (std::size_t i = 0; i < rep.points.size(); ++i)
    for (std::size_t j = i + 1; j < rep.points.size(); ++j) {
      ++rep.pairs_total;
      if (is_separated(sys, rep.points[i], rep.points[j], rep.horizon, rep.eps))
        ++rep.pairs_separated;
      else
        rep.all_separated = false;
    }
  return rep;
}

// merge condition without a fixed point never happens for a deterministic map:
// confirmed by direct search, vacuously true when orbits do not all merge
inline bool collapse_forces_fixed_point(const SystemSpec& sys) {
  if (sys.variant != SystemVariant::finite_map)
    raise(Errc::not_applicable, "fixed-point confirmation runs on finite maps");
  const std::size_t msize = sys.fin.labels.size();
  bool merge = true;
  for (std::size_t i = 0; i < msize && merge; ++i)
    for (std::size_t j = i + 1; j < msize && merge; ++j) {
      long long t = detail::first_merge(sys, FinitePoint{i}, FinitePoint{j},
                                        static_cast<long long>(msize) - 1);
      if (t < 0) merge = false;
    }
  if (!merge) return true;
  for (std::size_t i = 0; i < msize; ++i)
    if (sys.fin.map[i] == i) return true;
  return false;
}

}  // namespace aspec
