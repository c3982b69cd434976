#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "aspec/aspec.hpp"

using namespace aspec;

namespace {

// exhaustive maximum clique for cross-checking, graphs up to 16 vertices
std::size_t brute_max_clique(const BitGraph& g) {
  const int n = g.size();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j)
        if ((mask >> i & 1) && (mask >> j & 1) && !g.has_edge(i, j)) ok = false;
    if (ok) best = std::max(best, static_cast<std::size_t>(__builtin_popcount(mask)));
  }
  return best;
}

bool is_clique(const BitGraph& g, const std::vector<int>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!g.has_edge(vs[i], vs[j])) return false;
  return true;
}

}  // namespace

TEST_CASE("bit graph basics") {
  BitGraph g(70);  // spills over one 64-bit word
  g.add_edge(0, 69);
  g.add_edge(69, 5);
  CHECK(g.has_edge(69, 0));
  CHECK(g.has_edge(5, 69));
  CHECK_FALSE(g.has_edge(0, 5));
  CHECK(g.degree(69) == 2);
  CHECK_THROWS_AS(g.add_edge(3, 3), Error);
}

TEST_CASE("maximum clique on fixed graphs") {
  BitGraph empty(5);
  CHECK(max_clique(empty).size() == 1);

  BitGraph complete(6);
  complete.make_complete();
  CHECK(max_clique(complete) == std::vector<int>{0, 1, 2, 3, 4, 5});

  // triangle 0-1-2 plus pendant 3
  BitGraph tri(4);
  tri.add_edge(0, 1);
  tri.add_edge(1, 2);
  tri.add_edge(0, 2);
  tri.add_edge(2, 3);
  CHECK(max_clique(tri) == std::vector<int>{0, 1, 2});

  // 5-cycle: best is any edge
  BitGraph c5(5);
  for (int i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5);
  CHECK(max_clique(c5).size() == 2);
}

TEST_CASE("maximum clique matches exhaustive search on random graphs") {
  std::mt19937 rng(20260818);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 6 + static_cast<int>(rng() % 11);  // 6..16
    double p = (trial % 4 + 1) * 0.22;
    BitGraph g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::uniform_real_distribution<>(0, 1)(rng) < p) g.add_edge(i, j);
    std::vector<int> found = max_clique(g);
    CHECK(is_clique(g, found));
    CHECK(found.size() == brute_max_clique(g));
    std::vector<int> greedy = greedy_clique(g);
    CHECK(is_clique(g, greedy));
    CHECK(greedy.size() <= found.size());
  }
}

TEST_CASE("pair separation") {
  SystemSpec full = make_full_shift(2);
  Point x = parse_point("(0)"), y = parse_point("01(0)");
  // profile: d_0 = 1/2, d_1 = 1, then zero
  CHECK(is_separated(full, x, y, 3, Rat(1, 4)));
  CHECK(is_separated(full, x, y, 3, Rat(1, 2)));       // d_1 = 1 > 1/2
  CHECK_FALSE(is_separated(full, x, y, 3, Rat(1)));    // nothing exceeds 1 strictly
  CHECK_FALSE(is_separated(full, x, x, 8, Rat(1, 8)));

  // two offsets with d > 1/4, so separation needs a budget below 2
  CHECK(count_exceedances(full, x, y, 3, Rat(1, 4), true) == 2);
  CHECK(is_g_separated(full, x, y, 3, Rat(1, 4), MistakeFunction::constant(0)));
  CHECK(is_g_separated(full, x, y, 3, Rat(1, 4), MistakeFunction::constant(1)));
  CHECK_FALSE(is_g_separated(full, x, y, 3, Rat(1, 4), MistakeFunction::constant(2)));
  // budget at or above the horizon can never be exceeded
  CHECK_FALSE(is_g_separated(full, x, y, 3, Rat(1, 4), MistakeFunction::constant(3)));
}

TEST_CASE("separated set sizes on the full 2-shift") {
  SystemSpec full = make_full_shift(2);
  // plain, eps < 1: distinct words are separated, so the count is the word count
  for (long long n : {4LL, 6LL, 8LL}) {
    SeparationReport rep = max_separated(full, n, Rat(3, 5), std::nullopt, true);
    CHECK(rep.count == (1LL << n));
    CHECK(rep.method == "exact");
  }
  // mistake mode drops the shortcut and runs the clique solver
  SeparationReport g0 = max_separated(full, 4, Rat(3, 5), MistakeFunction::constant(0), true);
  CHECK(g0.count == 16);
  SeparationReport g1 = max_separated(full, 4, Rat(3, 5), MistakeFunction::constant(1), true);
  CHECK(g1.count == 8);
  SeparationReport g2 = max_separated(full, 4, Rat(3, 5), MistakeFunction::constant(2), true);
  CHECK(g2.count == 4);
  SeparationReport g1n6 = max_separated(full, 6, Rat(3, 5), MistakeFunction::constant(1), true);
  CHECK(g1n6.count == 32);
  SeparationReport g1n8 = max_separated(full, 8, Rat(3, 5), MistakeFunction::constant(1), true);
  CHECK(g1n8.count == 128);
  for (const SeparationReport* rep : {&g0, &g1, &g2}) {
    for (std::size_t i = 0; i < rep->witnesses.size(); ++i)
      for (std::size_t j = i + 1; j < rep->witnesses.size(); ++j)
        CHECK(is_g_separated(full, rep->witnesses[i], rep->witnesses[j], rep->n, rep->eps,
                             *rep->g));
  }
}

TEST_CASE("separated sets respect the metric threshold") {
  SystemSpec full = make_full_shift(2);
  // eps > 1 defeats single-symbol mismatches: only pairs with a dense mismatch
  // pattern stay separated, so the count drops below the word count
  SeparationReport rep = max_separated(full, 4, Rat(5, 4), std::nullopt, true);
  CHECK(rep.count < 16);
  CHECK(rep.count >= 2);  // (0...) vs (1...) differ everywhere: d = 2 > 5/4
  for (std::size_t i = 0; i < rep.witnesses.size(); ++i)
    for (std::size_t j = i + 1; j < rep.witnesses.size(); ++j)
      CHECK(is_separated(full, rep.witnesses[i], rep.witnesses[j], rep.n, rep.eps));
}

TEST_CASE("separated set sizes on the golden mean shift") {
  SystemSpec golden = make_sft(2, {{1, 1}, {1, 0}});
  SeparationReport plain = max_separated(golden, 4, Rat(1, 2), std::nullopt, true);
  CHECK(plain.count == 8);  // Fibonacci word count
  SeparationReport g1 = max_separated(golden, 4, Rat(1, 2), MistakeFunction::constant(1), true);
  CHECK(g1.count == 4);
}

TEST_CASE("separated sets on a finite map") {
  SystemSpec ex = build_example1();
  SeparationReport rep = max_separated(ex, 2, Rat(1, 2), std::nullopt, true);
  CHECK(rep.count == 2);  // a and b differ at offset 0
  SeparationReport far = max_separated(ex, 2, Rat(2), std::nullopt, true);
  CHECK(far.count == 1);  // nothing exceeds 2
}

TEST_CASE("greedy lower bound never beats exact") {
  SystemSpec golden = make_sft(2, {{1, 1}, {1, 0}});
  for (long long n : {3LL, 5LL, 7LL}) {
    SeparationReport ex = max_separated(golden, n, Rat(1, 2), MistakeFunction::constant(1), true);
    SeparationReport gr =
        max_separated(golden, n, Rat(1, 2), MistakeFunction::constant(1), false);
    CHECK(gr.method == "greedy-lower-bound");
    CHECK(gr.count <= ex.count);
    CHECK(gr.count >= 1);
  }
}

TEST_CASE("slope fitting") {
  double slope = 0, res = 0;
  least_squares_slope({1, 2, 3}, {2, 4, 6}, slope, res);
  CHECK(slope == Catch::Approx(2.0));
  CHECK(res == Catch::Approx(0.0).margin(1e-12));
  least_squares_slope({1, 2, 3, 4}, {5, 5, 5, 5}, slope, res);
  CHECK(slope == 0.0);  // exactly, not merely approximately
  CHECK(res == 0.0);
}

TEST_CASE("growth profile of the full 2-shift") {
  SystemSpec full = make_full_shift(2);
  std::vector<long long> ns;
  for (long long n = 4; n <= 12; ++n) ns.push_back(n);
  EntropyProfile prof = entropy_profile(full, ns, {Rat(3, 5)}, std::nullopt, true);
  REQUIRE(prof.rows.size() == 9);
  for (const EntropyRow& row : prof.rows) {
    CHECK(row.count == (1LL << row.n));
    CHECK(row.log_count_over_n == Catch::Approx(std::log(2.0)));
  }
  REQUIRE(prof.has_slope);
  CHECK(prof.slope == Catch::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(prof.window_n_lo == 4);
  CHECK(prof.window_n_hi == 12);
}

TEST_CASE("growth profile row ordering") {
  SystemSpec full = make_full_shift(2);
  EntropyProfile prof =
      entropy_profile(full, {6, 4, 4, 5}, {Rat(1, 4), Rat(1, 2), Rat(1, 4)}, std::nullopt, true);
  REQUIRE(prof.rows.size() == 6);  // 2 eps x 3 n after dedup
  CHECK(prof.rows[0].eps == Rat(1, 2));
  CHECK(prof.rows[0].n == 4);
  CHECK(prof.rows[2].n == 6);
  CHECK(prof.rows[3].eps == Rat(1, 4));
  CHECK(prof.window_eps == Rat(1, 4));
}

TEST_CASE("flat profile has slope exactly zero") {
  SystemSpec ex = build_example1();
  EntropyProfile prof = entropy_profile(ex, {2, 3, 4, 5}, {Rat(1, 2)}, std::nullopt, true);
  for (const EntropyRow& row : prof.rows) CHECK(row.count == 2);
  REQUIRE(prof.has_slope);
  CHECK(prof.slope == 0.0);
  CHECK(prof.residual == 0.0);
}
