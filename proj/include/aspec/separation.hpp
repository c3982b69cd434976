#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "aspec/max_clique.hpp"
#include "aspec/metrics.hpp"

namespace aspec {

// some offset j < n with d(T^j x, T^j y) > eps, strict
inline bool is_separated(const SystemSpec& sys, const Point& x, const Point& y, long long n,
                         const Rat& eps) {
  if (n < 1) raise(Errc::precondition_violated, "horizon must be >= 1");
  std::vector<Rat> prof = orbit_distance_profile(sys, x, y, n);
  for (const Rat& v : prof)
    if (v > eps) return true;
  return false;
}

// more than g(n, eps) offsets with d(T^j x, T^j y) > eps, strict on both counts
inline bool is_g_separated(const SystemSpec& sys, const Point& x, const Point& y, long long n,
                           const Rat& eps, const MistakeFunction& g) {
  if (n < 1) raise(Errc::precondition_violated, "horizon must be >= 1");
  long long G = g.eval(n, eps);
  if (G >= n) return false;  // count <= n can never exceed G
  return count_exceedances(sys, x, y, n, eps, /*strict=*/true) > G;
}

struct SeparationReport {
  long long n = 0;
  Rat eps;
  std::optional<MistakeFunction> g;  // empty: plain separation
  long long count = 0;
  std::vector<Point> witnesses;
  std::string method;  // "exact" or "greedy-lower-bound"
};

// points the counting quantifies over: canonical extensions of the admissible
// n-words; finite maps use the whole point table
inline std::vector<Point> separation_candidates(const SystemSpec& sys, long long n,
                                                long long cap = default_word_cap()) {
  std::vector<Point> pts;
  if (sys.variant == SystemVariant::finite_map) {
    for (std::size_t i = 0; i < sys.fin.labels.size(); ++i) pts.push_back(FinitePoint{i});
    return pts;
  }
  for (const Word& w : enumerate_words(sys, n, cap)) pts.push_back(canonical_point(sys, w));
  return pts;
}

namespace detail {

// distinct admissible n-words disagree inside the window, so every candidate
// pair is separated outright when eps < 1
inline bool all_pairs_separated_shortcut(const SystemSpec& sys, const Rat& eps, bool plain) {
  return plain && eps < 1 && sys.variant != SystemVariant::finite_map;
}

}  // namespace detail

inline SeparationReport max_separated(const SystemSpec& sys, long long n, const Rat& eps,
                                      const std::optional<MistakeFunction>& g, bool exact,
                                      long long cap = default_word_cap()) {
  if (n < 1) raise(Errc::precondition_violated, "horizon must be >= 1");
  if (eps <= 0) raise(Errc::precondition_violated, "eps must be positive");
  SeparationReport rep;
  rep.n = n;
  rep.eps = eps;
  rep.g = g;
  rep.method = exact ? "exact" : "greedy-lower-bound";
  std::vector<Point> pts = separation_candidates(sys, n, cap);
  const int V = static_cast<int>(pts.size());
  if (detail::all_pairs_separated_shortcut(sys, eps, !g.has_value())) {
    rep.count = V;
    rep.witnesses = std::move(pts);
    return rep;
  }
  BitGraph graph(V);
  for (int i = 0; i < V; ++i)
    for (int j = i + 1; j < V; ++j) {
      bool sep = g ? is_g_separated(sys, pts[static_cast<std::size_t>(i)],
                                    pts[static_cast<std::size_t>(j)], n, eps, *g)
                   : is_separated(sys, pts[static_cast<std::size_t>(i)],
                                  pts[static_cast<std::size_t>(j)], n, eps);
      if (sep) graph.add_edge(i, j);
    }
  std::vector<int> clique = exact ? max_clique(graph) : greedy_clique(graph);
  rep.count = static_cast<long long>(clique.size());
  for (int v : clique) rep.witnesses.push_back(pts[static_cast<std::size_t>(v)]);
  return rep;
}

struct EntropyRow {
  long long n = 0;
  Rat eps;
  long long count = 0;
  std::string method;
  double log_count_over_n = 0.0;
};

struct EntropyProfile {
  std::vector<EntropyRow> rows;  // sorted by (eps desc, n asc)
  bool has_slope = false;
  double slope = 0.0;
  double residual = 0.0;  // max |fit - observed| over the window
  Rat window_eps;
  long long window_n_lo = 0, window_n_hi = 0;
  std::string mode;  // "plain" or the mistake function description
};

// least squares of y against x; exactly 0 when all y coincide
inline void least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys,
                                double& slope, double& max_abs_residual) {
  const std::size_t m = xs.size();
  bool flat = true;
  for (double y : ys)
    if (y != ys.front()) flat = false;
  if (flat) {
    slope = 0.0;
    max_abs_residual = 0.0;
    return;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double dm = static_cast<double>(m);
  slope = (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / dm;
  max_abs_residual = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    max_abs_residual = std::max(max_abs_residual, std::abs(ys[i] - (slope * xs[i] + intercept)));
}

inline EntropyProfile entropy_profile(const SystemSpec& sys, const std::vector<long long>& n_list,
                                      const std::vector<Rat>& eps_list,
                                      const std::optional<MistakeFunction>& g, bool exact,
                                      long long cap = default_word_cap(),
                                      bool slope_from_greedy = false) {
  if (n_list.empty() || eps_list.empty())
    raise(Errc::precondition_violated, "profile needs nonempty n and eps lists");
  EntropyProfile prof;
  prof.mode = g ? g->describe() : "plain";
  std::vector<Rat> eps_sorted = eps_list;
  std::sort(eps_sorted.begin(), eps_sorted.end(), std::greater<Rat>());
  eps_sorted.erase(std::unique(eps_sorted.begin(), eps_sorted.end()), eps_sorted.end());
  std::vector<long long> n_sorted = n_list;
  std::sort(n_sorted.begin(), n_sorted.end());
  n_sorted.erase(std::unique(n_sorted.begin(), n_sorted.end()), n_sorted.end());
  for (const Rat& e : eps_sorted)
    for (long long n : n_sorted) {
      SeparationReport r = max_separated(sys, n, e, g, exact, cap);
      EntropyRow row;
      row.n = n;
      row.eps = e;
      row.count = r.count;
      row.method = r.method;
      row.log_count_over_n =
          std::log(static_cast<double>(r.count)) / static_cast<double>(n);
      prof.rows.push_back(std::move(row));
    }
  // slope fit: the rows at the smallest eps whose counts are trustworthy
  const Rat& small = eps_sorted.back();
  std::vector<double> xs, ys;
  for (const EntropyRow& row : prof.rows) {
    if (row.eps != small) continue;
    if (row.method != "exact" && !slope_from_greedy) continue;
    xs.push_back(static_cast<double>(row.n));
    ys.push_back(std::log(static_cast<double>(row.count)));
  }
  if (xs.size() >= 3) {
    prof.has_slope = true;
    prof.window_eps = small;
    prof.window_n_lo = static_cast<long long>(xs.front());
    prof.window_n_hi = static_cast<long long>(xs.back());
    least_squares_slope(xs, ys, prof.slope, prof.residual);
  }
  return prof;
}

}  // namespace aspec
