// Acceptance harness: one line per criterion, exit code = number of failures.
// Tolerances are pinned here, next to the check that uses them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aspec/aspec.hpp"

using namespace aspec;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_failures = 0;

void criterion(const char* id, const char* what, const std::function<Outcome()>& fn) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, e.what()};
  }
  const long long ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  std::printf("%s %s (%lld ms) %s%s%s\n", id, o.pass ? "PASS" : "FAIL", ms, what,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  if (!o.pass) ++g_failures;
}

Outcome fail(std::string detail) { return {false, std::move(detail)}; }
Outcome pass() { return {true, {}}; }

// ---- A1: two point map a -> b -> b -------------------------------------

Outcome a1_two_point_map() {
  SystemSpec ex = build_example1();
  CollapseOutcome out = check_collapse_condition(ex);
  if (!out.ok) return fail("orbits do not merge");
  if (!point_eq(out.witness.fixed_point, Point(FinitePoint{1})) || out.witness.horizon != 2)
    return fail("expected fixed point b with horizon 2, got " +
                format_point_for(ex, out.witness.fixed_point) + " with horizon " +
                std::to_string(out.witness.horizon));

  const std::vector<Rat> eps_grid{Rat(1, 4), Rat(1, 2), Rat(3, 4)};
  for (long long n = 2; n <= 16; ++n)
    for (const Rat& e : eps_grid) {
      long long cnt = max_separated(ex, n, e, std::nullopt, true).count;
      if (cnt != 2)
        return fail("s_" + std::to_string(n) + "(" + format_rational(e) +
                    ") = " + std::to_string(cnt) + ", expected 2");
    }

  std::vector<long long> ns;
  for (long long n = 2; n <= 16; ++n) ns.push_back(n);
  EntropyProfile prof = entropy_profile(ex, ns, eps_grid, std::nullopt, true);
  if (!prof.has_slope || prof.slope != 0.0)
    return fail("slope is not exactly zero");

  AlmostSpecVerdict v = almost_spec_exhaustive_check(ex, MistakeFunction::constant(1),
                                                     GapFunction::constant(1), 3, eps_grid);
  if (!v.holds) return fail("an exhaustive segment tuple has no tracing point");
  return pass();
}

// ---- A2: eventually fixed shift, k = 2, horizon 3 ----------------------

Outcome a2_eventually_fixed() {
  SystemSpec ef = make_eventual_fixed(2, 3, 0);
  CollapseOutcome out = check_collapse_condition(ef);
  if (!out.ok) return fail("orbits do not merge");
  if (!point_eq(out.witness.fixed_point, Point(parse_point("(0)"))))
    return fail("fixed point is not (0)");
  if (out.witness.horizon != 4)
    return fail("merge horizon " + std::to_string(out.witness.horizon) + ", expected 4");

  StabilizationReport rep = zero_entropy_witness(ef, out.witness, 8, {Rat(1, 4), Rat(1, 2)});
  if (!rep.ok) return fail("counts do not stabilize past the horizon");
  for (const StabilizationRow& row : rep.rows)
    if (row.count != 8)
      return fail("stabilized count " + std::to_string(row.count) + ", expected 8");

  // every two-segment tuple over the canonical points is traceable
  MistakeFunction g = MistakeFunction::constant(3);
  GapFunction kg = GapFunction::constant(3);
  std::vector<Point> pts = separation_candidates(ef, ef.horizon);
  long long traced = 0;
  for (const Point& x1 : pts)
    for (const Point& x2 : pts)
      for (long long n1 : {3LL, 4LL, 5LL})
        for (long long n2 : {3LL, 4LL, 5LL})
          for (const Rat& e1 : {Rat(1, 4), Rat(1, 2)})
            for (const Rat& e2 : {Rat(1, 4), Rat(1, 2)}) {
              std::vector<Segment> segs{Segment{x1, n1, e1}, Segment{x2, n2, e2}};
              std::optional<Point> z = trace_point(ef, segs, g, kg);
              if (!z)
                return fail("untraceable tuple [" + format_point_for(ef, x1) + ":" +
                            std::to_string(n1) + ":" + format_rational(e1) + ", " +
                            format_point_for(ef, x2) + ":" + std::to_string(n2) + ":" +
                            format_rational(e2) + "]");
              if (!verify_trace(ef, *z, segs, g))
                return fail("traced point fails exact verification");
              ++traced;
            }
  if (traced != static_cast<long long>(pts.size() * pts.size()) * 9 * 4)
    return fail("tuple sweep incomplete");
  return pass();
}

// ---- A3: full 2-shift counts and slope ----------------------------------

Outcome a3_full_shift() {
  const double tol = 0.01;  // |slope - log 2| bound
  SystemSpec full = make_full_shift(2);
  std::vector<long long> ns;
  for (long long n = 4; n <= 12; ++n) ns.push_back(n);
  EntropyProfile prof = entropy_profile(full, ns, {Rat(3, 5)}, std::nullopt, true);
  for (const EntropyRow& r : prof.rows) {
    long long expect = 1LL << r.n;
    if (r.count != expect)
      return fail("s_" + std::to_string(r.n) + " = " + std::to_string(r.count) +
                  ", expected " + std::to_string(expect));
  }
  if (!prof.has_slope) return fail("no slope");
  if (std::fabs(prof.slope - std::log(2.0)) > tol) {
    std::ostringstream os;
    os << "slope " << prof.slope << " not within " << tol << " of log 2";
    return fail(os.str());
  }
  return pass();
}

// ---- A4: golden mean shift ----------------------------------------------

Outcome a4_golden_mean() {
  const double reference = 0.4812;  // log of the golden ratio, 4 digits
  const double tol = 0.05;
  SystemSpec golden = make_sft(2, {{1, 1}, {1, 0}});
  std::vector<long long> ns;
  for (long long n = 4; n <= 16; ++n) ns.push_back(n);
  EntropyProfile prof = entropy_profile(golden, ns, {Rat(1, 2)}, std::nullopt, true);

  // counts follow the Fibonacci recurrence
  std::vector<long long> fib{2, 3};  // counts at n = 1, 2
  while (static_cast<long long>(fib.size()) < 17)
    fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
  for (const EntropyRow& r : prof.rows)
    if (r.count != fib[static_cast<std::size_t>(r.n - 1)])
      return fail("s_" + std::to_string(r.n) + " = " + std::to_string(r.count) +
                  ", expected " + std::to_string(fib[static_cast<std::size_t>(r.n - 1)]));
  if (!prof.has_slope || std::fabs(prof.slope - reference) > tol) {
    std::ostringstream os;
    os << "slope " << prof.slope << " not within " << tol << " of " << reference;
    return fail(os.str());
  }
  return pass();
}

// ---- A5: beta shift, beta = 9/5 ------------------------------------------

Outcome a5_beta_shift() {
  const double tol = 0.08;
  const double reference = std::log(9.0 / 5.0);
  SystemSpec beta = make_beta_shift(Rat(9, 5), 64);
  std::vector<long long> ns;
  for (long long n = 4; n <= 16; ++n) ns.push_back(n);
  EntropyProfile prof = entropy_profile(beta, ns, {Rat(1, 2)}, std::nullopt, true);
  const std::vector<long long> expect{13,  23,   42,   75,   136,  244, 440,
                                      791, 1425, 2564, 4617, 8309, 14958};
  for (std::size_t i = 0; i < prof.rows.size(); ++i)
    if (prof.rows[i].count != expect[i])
      return fail("s_" + std::to_string(prof.rows[i].n) + " = " +
                  std::to_string(prof.rows[i].count) + ", expected " +
                  std::to_string(expect[i]));
  if (!prof.has_slope || std::fabs(prof.slope - reference) > tol) {
    std::ostringstream os;
    os << "slope " << prof.slope << " not within " << tol << " of log(9/5) = " << reference;
    return fail(os.str());
  }
  return pass();
}

// ---- A6: traced family of 64 points on the full 2-shift ------------------

Outcome a6_traced_family() {
  SystemSpec full = make_full_shift(2);
  Certificate cert{parse_point("(0)"), parse_point("(1)"),
                   4,                  Rat(9, 10),
                   Rat(3, 10),         MistakeFunction::constant(1),
                   GapFunction::constant(1)};
  validate_certificate(full, cert);
  const long long cap = 1LL << 25;  // horizon 24 needs 2^24 candidate words
  try {
    FamilyReport rep = build_separated_family(full, cert, 6, cap);
    if (rep.points.size() != 64)
      return fail("expected 64 traced points, got " + std::to_string(rep.points.size()));
    if (!rep.all_separated)
      return fail(std::to_string(rep.pairs_separated) + "/" +
                  std::to_string(rep.pairs_total) + " pairs separated");
    return pass();
  } catch (const Error& e) {
    return fail(std::string("expected a fully separated family of 64 points; ") + e.what());
  }
}

// ---- A7: certificate search outcomes --------------------------------------

Outcome a7_certificate_search() {
  const std::vector<Rat> grid{Rat(1, 10), Rat(1, 4), Rat(1, 2)};

  if (certificate_search(build_example1(), MistakeFunction::constant(2),
                         GapFunction::constant(2), grid, 12)
          .has_value())
    return fail("two point map yielded a certificate");
  if (certificate_search(make_eventual_fixed(2, 3, 0), MistakeFunction::constant(3),
                         GapFunction::constant(3), grid, 12)
          .has_value())
    return fail("eventually fixed shift yielded a certificate");

  SystemSpec full = make_full_shift(2);
  std::optional<Certificate> cf =
      certificate_search(full, MistakeFunction::constant(1), GapFunction::constant(1), grid, 8);
  if (!cf) return fail("no certificate on the full 2-shift");
  validate_certificate(full, *cf);
  if (entropy_lower_bound(*cf) <= 0.0) return fail("nonpositive entropy bound");

  SystemSpec golden = make_sft(2, {{1, 1}, {1, 0}});
  std::optional<Certificate> cg = certificate_search(golden, MistakeFunction::constant(1),
                                                     GapFunction::constant(1), grid, 8);
  if (!cg) return fail("no certificate on the golden mean shift");
  validate_certificate(golden, *cg);
  return pass();
}

// ---- A8: property sweep ----------------------------------------------------

bool brute_index_family(long long n, long long G, long long& out) {
  long long count = 0;
  for (long long mask = 0; mask < (1LL << n); ++mask)
    if (__builtin_popcountll(static_cast<unsigned long long>(mask)) >= n - G) ++count;
  out = count;
  return true;
}

Outcome a8_property_sweep() {
  // subset counts behind the mistake-ball cardinality
  for (long long n = 1; n <= 12; ++n)
    for (long long G = 0; G < n; ++G) {
      long long brute = 0;
      brute_index_family(n, G, brute);
      Int got = index_family_size(n, MistakeFunction::constant(G), Rat(1, 2));
      if (got != Int(brute))
        return fail("index family size mismatch at n=" + std::to_string(n) +
                    " G=" + std::to_string(G));
    }

  // fractional-power budget agrees with integer square roots
  MistakeFunction root = MistakeFunction::power(Rat(1), Rat(1, 2));
  for (long long n = 1; n <= 200; ++n) {
    long long isqrt = 0;
    while ((isqrt + 1) * (isqrt + 1) <= n) ++isqrt;
    long long expect = isqrt * isqrt == n ? isqrt : isqrt + 1;
    if (root.eval(n, Rat(1, 2)) != expect)
      return fail("ceil sqrt mismatch at n=" + std::to_string(n));
  }

  // greedy digits of the expansion of one stay within exact bounds
  for (const Rat& b : {Rat(3, 2), Rat(9, 5), Rat(987, 610)}) {
    Word d = beta_expansion_of_one(b, 24);
    Rat sum(0), scale(1);
    for (int digit : d) {
      scale = scale / b;
      sum = sum + Rat(digit) * scale;
    }
    Rat rem = Rat(1) - sum;
    if (rem < 0 || rem >= scale)
      return fail("expansion remainder out of range for beta=" + format_rational(b));
  }

  // enumeration matches filtering the full shift by admissibility
  SystemSpec full = make_full_shift(2);
  std::vector<Word> pool = enumerate_words(full, 10);
  for (const SystemSpec& sys : {make_sft(2, {{1, 1}, {1, 0}}), make_beta_shift(Rat(9, 5), 64),
                                make_eventual_fixed(2, 3, 0)}) {
    std::vector<Word> filtered;
    for (const Word& w : pool)
      if (is_admissible(sys, w)) filtered.push_back(w);
    if (enumerate_words(sys, 10) != filtered)
      return fail("word enumeration disagrees with the admissibility filter");
  }

  // exact clique solver against exhaustive search on random graphs
  std::mt19937 rng(20260818u);
  for (int round = 0; round < 12; ++round) {
    int n = 6 + static_cast<int>(rng() % 9);
    double p = 0.25 + 0.5 * (static_cast<double>(rng() % 1000) / 1000.0);
    BitGraph gph(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (static_cast<double>(rng() % 1000) / 1000.0 < p) gph.add_edge(i, j);
    std::size_t best = 0;
    for (long long mask = 0; mask < (1LL << n); ++mask) {
      std::vector<int> verts;
      for (int i = 0; i < n; ++i)
        if (mask & (1LL << i)) verts.push_back(i);
      if (verts.size() <= best) continue;
      bool clique = true;
      for (std::size_t a = 0; a < verts.size() && clique; ++a)
        for (std::size_t b = a + 1; b < verts.size() && clique; ++b)
          clique = gph.has_edge(verts[a], verts[b]);
      if (clique) best = verts.size();
    }
    if (max_clique(gph).size() != best)
      return fail("clique size mismatch on random graph round " + std::to_string(round));
  }

  // every found trace passes exact verification
  MistakeFunction g = MistakeFunction::constant(1);
  GapFunction kg = GapFunction::constant(1);
  std::vector<Point> targets{parse_point("(0)"), parse_point("(1)"), parse_point("(01)")};
  long long found = 0;
  for (const Point& x1 : targets)
    for (const Point& x2 : targets)
      for (long long n1 : {3LL, 4LL})
        for (long long n2 : {3LL, 4LL})
          for (const Rat& e : {Rat(1, 2), Rat(3, 5)}) {
            std::vector<Segment> segs{Segment{x1, n1, e}, Segment{x2, n2, e}};
            std::optional<Point> z = trace_point(full, segs, g, kg);
            if (z) {
              ++found;
              if (!verify_trace(full, *z, segs, g))
                return fail("trace search returned an unverified point");
            }
          }
  if (found == 0) return fail("trace sweep found nothing");
  return pass();
}

}  // namespace

int main() {
  criterion("A1", "two point map: merge witness, flat counts, exhaustive tracing",
            a1_two_point_map);
  criterion("A2", "eventually fixed shift: merge horizon, stabilization, tuple tracing",
            a2_eventually_fixed);
  criterion("A3", "full 2-shift: exact counts 2^n and slope log 2", a3_full_shift);
  criterion("A4", "golden mean shift: Fibonacci counts and slope", a4_golden_mean);
  criterion("A5", "beta 9/5 shift: exact counts and slope", a5_beta_shift);
  criterion("A6", "traced family of 64 block words on the full 2-shift", a6_traced_family);
  criterion("A7", "certificate search: none on collapsing systems, found on expanding ones",
            a7_certificate_search);
  criterion("A8", "property sweep: counts, budgets, expansions, cliques, traces",
            a8_property_sweep);
  std::printf("%d/8 criteria passed\n", 8 - g_failures);
  return g_failures;
}
