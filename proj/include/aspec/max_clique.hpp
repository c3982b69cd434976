#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "aspec/error.hpp"

namespace aspec {

// undirected graph on 0..n-1 as row bitsets
class BitGraph {
 public:
  explicit BitGraph(int n = 0) : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64) {
    rows_.assign(static_cast<std::size_t>(n_), std::vector<std::uint64_t>(words_, 0));
  }

  int size() const { return n_; }

  void add_edge(int i, int j) {
    if (i == j) raise(Errc::precondition_violated, "no self loops");
    set_bit(rows_[static_cast<std::size_t>(i)], j);
    set_bit(rows_[static_cast<std::size_t>(j)], i);
  }

  bool has_edge(int i, int j) const {
    return (rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j) >> 6] >>
            (static_cast<unsigned>(j) & 63u)) &
           1u;
  }

  int degree(int i) const {
    int d = 0;
    for (std::uint64_t w : rows_[static_cast<std::size_t>(i)]) d += __builtin_popcountll(w);
    return d;
  }

  const std::vector<std::uint64_t>& row(int i) const {
    return rows_[static_cast<std::size_t>(i)];
  }

  // complete-graph fill, for callers that already know every pair is adjacent
  void make_complete() {
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) add_edge(i, j);
  }

 private:
  static void set_bit(std::vector<std::uint64_t>& row, int j) {
    row[static_cast<std::size_t>(j) >> 6] |= 1ull << (static_cast<unsigned>(j) & 63u);
  }

  int n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::vector<std::uint64_t>> rows_;
};

// smallest-id-first greedy clique; a deterministic lower bound
inline std::vector<int> greedy_clique(const BitGraph& g) {
  std::vector<int> out;
  std::vector<int> cand(static_cast<std::size_t>(g.size()));
  std::iota(cand.begin(), cand.end(), 0);
  while (!cand.empty()) {
    int v = cand.front();
    out.push_back(v);
    std::vector<int> next;
    for (int u : cand)
      if (u != v && g.has_edge(u, v)) next.push_back(u);
    cand.swap(next);
  }
  return out;
}

namespace detail {

// branch and bound with greedy coloring bound; candidates kept in a fixed
// global order (degree desc, id asc) so the result is deterministic
class CliqueSolver {
 public:
  explicit CliqueSolver(const BitGraph& g) : g_(g) {}

  std::vector<int> solve() {
    const int n = g_.size();
    if (n == 0) return {};
    bool complete = true;
    for (int i = 0; i < n && complete; ++i)
      if (g_.degree(i) != n - 1) complete = false;
    if (complete) {
      std::vector<int> all(static_cast<std::size_t>(n));
      std::iota(all.begin(), all.end(), 0);
      return all;
    }
    best_ = greedy_clique(g_);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g_.degree(a) > g_.degree(b); });
    std::vector<int> r;
    expand(r, order);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  // candidates arrive ordered; color greedily, then branch from high colors down
  void expand(std::vector<int>& r, const std::vector<int>& cand) {
    const std::size_t m = cand.size();
    if (m == 0) {
      if (r.size() > best_.size()) best_ = r;
      return;
    }
    std::vector<int> color(m);
    std::vector<std::vector<int>> classes;
    for (std::size_t i = 0; i < m; ++i) {
      int v = cand[i];
      std::size_t c = 0;
      for (; c < classes.size(); ++c) {
        bool clash = false;
        for (int u : classes[c])
          if (g_.has_edge(u, v)) {
            clash = true;
            break;
          }
        if (!clash) break;
      }
      if (c == classes.size()) classes.emplace_back();
      classes[c].push_back(v);
      color[i] = static_cast<int>(c) + 1;
    }
    std::vector<std::size_t> by_color(m);
    std::iota(by_color.begin(), by_color.end(), std::size_t{0});
    std::stable_sort(by_color.begin(), by_color.end(),
                     [&](std::size_t a, std::size_t b) { return color[a] < color[b]; });
    for (std::size_t t = m; t-- > 0;) {
      std::size_t i = by_color[t];
      if (r.size() + static_cast<std::size_t>(color[i]) <= best_.size()) return;
      int v = cand[i];
      r.push_back(v);
      std::vector<int> next;
      for (std::size_t s = 0; s < t; ++s) {
        int u = cand[by_color[s]];
        if (g_.has_edge(u, v)) next.push_back(u);
      }
      // keep the global order inside the child candidate list
      std::sort(next.begin(), next.end(), [&](int a, int b) {
        int da = g_.degree(a), db = g_.degree(b);
        return da != db ? da > db : a < b;
      });
      if (next.empty()) {
        if (r.size() > best_.size()) best_ = r;
      } else {
        expand(r, next);
      }
      r.pop_back();
    }
  }

  const BitGraph& g_;
  std::vector<int> best_;
};

}  // namespace detail

// one maximum clique, deterministic; vertices returned sorted
inline std::vector<int> max_clique(const BitGraph& g) {
  detail::CliqueSolver s(g);
  return s.solve();
}

}  // namespace aspec
