#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aspec/rational.hpp"

namespace aspec {

enum class MistakeKind { constant, logarithmic, power, table };

// c(eps) step row: use `c` whenever eps >= eps_ge (rows kept sorted by eps_ge desc).
struct LogStep {
  Rat eps_ge;
  Rat c;
};

// value(n) step row: use `value` whenever n >= n_ge (rows sorted by n_ge asc).
struct TableRow {
  long long n_ge;
  long long value;
};

namespace detail {

// Exact test  v <= n^(99/100)  for integers v >= 0, n >= 1.
inline bool fits_sublinear(long long v, long long n) {
  if (v < 0) return false;
  return int_pow(Int(v), 100) <= int_pow(Int(n), 99);
}

// Exact ceil((a/b) * n^(p/q)) for a,b,p,q,n > 0: least m with (m*b)^q >= a^q * n^p.
inline long long ceil_scaled_root_pow(const Int& a, const Int& b, unsigned long p,
                                      unsigned long q, long long n) {
  Int rhs = int_pow(Int(a), q) * int_pow(Int(n), p);
  // bracket via doubles, then exact binary search
  long long hi = 2;
  while (int_pow(Int(hi) * b, q) < rhs) hi *= 2;
  long long lo = 0;
  while (lo < hi) {
    long long mid = lo + (hi - lo) / 2;
    if (int_pow(Int(mid) * b, q) >= rhs)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

}  // namespace detail

// g(n, eps): nonnegative, monotone in n, sublinear (eval <= n^0.99 for n >= n0),
// clamped at eps0: eval(n, eps) = eval(n, eps0) for eps >= eps0.
class MistakeFunction {
 public:
  static Rat default_epsilon0() { return Rat(1); }

  static MistakeFunction constant(long long value, Rat eps0 = default_epsilon0()) {
    MistakeFunction g;
    g.kind_ = MistakeKind::constant;
    g.const_value_ = value;
    g.eps0_ = std::move(eps0);
    g.validate();
    return g;
  }

  static MistakeFunction logarithmic(Rat c, Rat eps0 = default_epsilon0()) {
    return logarithmic(std::vector<LogStep>{{Rat(0), std::move(c)}}, std::move(eps0));
  }

  static MistakeFunction logarithmic(std::vector<LogStep> steps, Rat eps0 = default_epsilon0()) {
    MistakeFunction g;
    g.kind_ = MistakeKind::logarithmic;
    g.log_steps_ = std::move(steps);
    std::sort(g.log_steps_.begin(), g.log_steps_.end(),
              [](const LogStep& a, const LogStep& b) { return a.eps_ge > b.eps_ge; });
    g.eps0_ = std::move(eps0);
    g.validate();
    return g;
  }

  static MistakeFunction power(Rat scale, Rat alpha, Rat eps0 = default_epsilon0()) {
    MistakeFunction g;
    g.kind_ = MistakeKind::power;
    g.scale_ = std::move(scale);
    g.alpha_ = std::move(alpha);
    g.eps0_ = std::move(eps0);
    g.validate();
    return g;
  }

  static MistakeFunction table(std::vector<TableRow> rows, Rat eps0 = default_epsilon0()) {
    MistakeFunction g;
    g.kind_ = MistakeKind::table;
    g.rows_ = std::move(rows);
    std::sort(g.rows_.begin(), g.rows_.end(),
              [](const TableRow& a, const TableRow& b) { return a.n_ge < b.n_ge; });
    g.eps0_ = std::move(eps0);
    g.validate();
    return g;
  }

  MistakeKind kind() const { return kind_; }
  const Rat& epsilon0() const { return eps0_; }
  long long n0() const { return n0_; }

  long long eval(long long n, const Rat& eps) const {
    if (n < 1) raise(Errc::precondition_violated, "mistake function needs n >= 1");
    if (eps <= 0) raise(Errc::precondition_violated, "mistake function needs eps > 0");
    const Rat& e = eps < eps0_ ? eps : eps0_;
    switch (kind_) {
      case MistakeKind::constant:
        return const_value_;
      case MistakeKind::logarithmic: {
        Rat c = log_coeff(e);
        if (c == 0) return 0;
        // c*ln(n+1) is irrational for rational c != 0, so the ceiling cannot sit
        // on an integer boundary; long double is enough at the scales we touch.
        long double v = static_cast<long double>(rat_to_double(c)) *
                        std::log(static_cast<long double>(n) + 1.0L);
        return static_cast<long long>(std::ceil(v));
      }
      case MistakeKind::power:
        return detail::ceil_scaled_root_pow(
            rat_num(scale_), rat_den(scale_),
            static_cast<unsigned long>(rat_num(alpha_).convert_to<long long>()),
            static_cast<unsigned long>(rat_den(alpha_).convert_to<long long>()), n);
      case MistakeKind::table: {
        long long v = rows_.front().value;
        for (const auto& row : rows_) {
          if (row.n_ge > n) break;
          v = row.value;
        }
        return v;
      }
    }
    raise(Errc::validation_error, "unreachable mistake kind");
  }

  // pointwise 2*g, used by separated-pair certificates
  MistakeFunction doubled() const {
    MistakeFunction g = *this;
    switch (kind_) {
      case MistakeKind::constant: g.const_value_ *= 2; break;
      case MistakeKind::logarithmic:
        for (auto& s : g.log_steps_) s.c *= 2;
        break;
      case MistakeKind::power: g.scale_ *= 2; break;
      case MistakeKind::table:
        for (auto& r : g.rows_) r.value *= 2;
        break;
    }
    g.compute_n0();
    return g;
  }

  // round-trips through parse_g_spec for config echo
  std::string describe() const {
    switch (kind_) {
      case MistakeKind::constant: return "const:" + std::to_string(const_value_);
      case MistakeKind::logarithmic: {
        if (log_steps_.size() == 1) return "log:" + format_rational(log_steps_[0].c);
        std::string s = "logtable:";
        for (std::size_t i = 0; i < log_steps_.size(); ++i) {
          if (i) s += ";";
          s += format_rational(log_steps_[i].eps_ge) + "=" + format_rational(log_steps_[i].c);
        }
        return s;
      }
      case MistakeKind::power:
        return "pow:" + format_rational(scale_) + "," + format_rational(alpha_);
      case MistakeKind::table: {
        std::string s = "table:";
        for (std::size_t i = 0; i < rows_.size(); ++i) {
          if (i) s += ";";
          s += std::to_string(rows_[i].n_ge) + "=" + std::to_string(rows_[i].value);
        }
        return s;
      }
    }
    return "?";
  }

  bool operator==(const MistakeFunction& o) const {
    return kind_ == o.kind_ && const_value_ == o.const_value_ && log_steps_eq(o) &&
           scale_ == o.scale_ && alpha_ == o.alpha_ && rows_eq(o) && eps0_ == o.eps0_;
  }

 private:
  MistakeFunction() = default;

  bool log_steps_eq(const MistakeFunction& o) const {
    if (log_steps_.size() != o.log_steps_.size()) return false;
    for (std::size_t i = 0; i < log_steps_.size(); ++i)
      if (log_steps_[i].eps_ge != o.log_steps_[i].eps_ge || log_steps_[i].c != o.log_steps_[i].c)
        return false;
    return true;
  }
  bool rows_eq(const MistakeFunction& o) const {
    if (rows_.size() != o.rows_.size()) return false;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (rows_[i].n_ge != o.rows_[i].n_ge || rows_[i].value != o.rows_[i].value) return false;
    return true;
  }

  Rat log_coeff(const Rat& e) const {
    for (const auto& s : log_steps_)
      if (e >= s.eps_ge) return s.c;
    return log_steps_.back().c;
  }

  Rat max_log_coeff() const {
    Rat m = log_steps_.front().c;
    for (const auto& s : log_steps_) m = std::max(m, s.c);
    return m;
  }

  void validate() {
    if (eps0_ <= 0) raise(Errc::validation_error, "epsilon0 must be positive");
    switch (kind_) {
      case MistakeKind::constant:
        if (const_value_ < 0) raise(Errc::validation_error, "constant value must be >= 0");
        break;
      case MistakeKind::logarithmic:
        if (log_steps_.empty()) raise(Errc::validation_error, "log kind needs coefficients");
        for (const auto& s : log_steps_)
          if (s.c < 0) raise(Errc::validation_error, "log coefficient must be >= 0");
        break;
      case MistakeKind::power: {
        if (scale_ <= 0) raise(Errc::validation_error, "power scale must be positive");
        // the sublinearity bound eval <= n^0.99 rules out exponents in [0.99, 1)
        if (!(alpha_ > 0 && alpha_ < Rat(99, 100)))
          raise(Errc::validation_error, "power exponent must lie in (0, 0.99)");
        break;
      }
      case MistakeKind::table: {
        if (rows_.empty()) raise(Errc::validation_error, "table kind needs rows");
        if (rows_.front().n_ge > 1) raise(Errc::validation_error, "table must cover n = 1");
        for (std::size_t i = 0; i < rows_.size(); ++i) {
          if (rows_[i].value < 0) raise(Errc::validation_error, "table values must be >= 0");
          if (i && rows_[i].n_ge == rows_[i - 1].n_ge)
            raise(Errc::validation_error, "table rows must have distinct n thresholds");
          if (i && rows_[i].value < rows_[i - 1].value)
            raise(Errc::validation_error, "table values must be nondecreasing in n");
        }
        break;
      }
    }
    compute_n0();
  }

  // Smallest declared horizon past which eval(n, .) <= n^0.99 holds for every n.
  // Constant and table kinds are eventually constant: binary search the exact
  // predicate. Power and log kinds: past the analytic threshold where
  // n^0.99 - (growth term) is increasing, the strengthened exact check
  // (eval(n)+1)^100 <= n^99 at one point implies the bound everywhere beyond.
  void compute_n0() {
    auto first_const_ok = [](long long v, long long lo) {
      long long hi = std::max<long long>(lo, 1);
      while (!detail::fits_sublinear(v, hi)) {
        if (hi > (1LL << 50)) raise(Errc::validation_error, "sublinearity horizon too large");
        hi *= 2;
      }
      long long l = std::max<long long>(lo, 1), r = hi;
      while (l < r) {
        long long mid = l + (r - l) / 2;
        if (detail::fits_sublinear(v, mid))
          r = mid;
        else
          l = mid + 1;
      }
      return l;
    };
    switch (kind_) {
      case MistakeKind::constant:
        n0_ = first_const_ok(const_value_, 1);
        return;
      case MistakeKind::table:
        n0_ = first_const_ok(rows_.back().value, rows_.back().n_ge);
        return;
      case MistakeKind::power: {
        double s = rat_to_double(scale_);
        double a = rat_to_double(alpha_);
        double thresh = std::pow(std::max(s * a / 0.99, 1.0), 1.0 / (0.99 - a));
        long long n = std::max<long long>(2, static_cast<long long>(thresh * 2.0) + 1);
        while (!detail::fits_sublinear(eval(n, eps0_) + 1, n)) {
          if (n > (1LL << 50)) raise(Errc::validation_error, "sublinearity horizon too large");
          n *= 2;
        }
        n0_ = n;
        return;
      }
      case MistakeKind::logarithmic: {
        double cmax = rat_to_double(max_log_coeff());
        long long n = std::max<long long>(3, static_cast<long long>(cmax * 2.0) + 2);
        auto worst = [&](long long m) {
          if (cmax == 0.0) return 0LL;
          long double v = static_cast<long double>(cmax) *
                          std::log(static_cast<long double>(m) + 1.0L);
          return static_cast<long long>(std::ceil(v));
        };
        while (!detail::fits_sublinear(worst(n) + 1, n)) {
          if (n > (1LL << 50)) raise(Errc::validation_error, "sublinearity horizon too large");
          n *= 2;
        }
        n0_ = n;
        return;
      }
    }
  }

  MistakeKind kind_ = MistakeKind::constant;
  long long const_value_ = 0;
  std::vector<LogStep> log_steps_;
  Rat scale_, alpha_;
  std::vector<TableRow> rows_;
  Rat eps0_ = Rat(1);
  long long n0_ = 1;
};

// A horizon n together with a strictly increasing subset of {0..n-1}.
struct IndexSet {
  long long n = 0;
  std::vector<long long> members;
};

inline void validate_index_set(const IndexSet& s) {
  if (s.n < 1) raise(Errc::validation_error, "index set horizon must be >= 1");
  for (std::size_t i = 0; i < s.members.size(); ++i) {
    if (s.members[i] < 0 || s.members[i] >= s.n)
      raise(Errc::validation_error, "index set member out of range");
    if (i && s.members[i] <= s.members[i - 1])
      raise(Errc::validation_error, "index set members must be strictly increasing");
  }
}

// #I(g;n,eps) = sum_{k = n-g}^{n} C(n,k); requires g(n,eps) < n.
inline Int index_family_size(long long n, const MistakeFunction& g, const Rat& eps) {
  long long G = g.eval(n, eps);
  if (G >= n) raise(Errc::precondition_violated, "index family needs g(n,eps) < n");
  Int total = 0, binom = 1;  // C(n,n)
  for (long long k = n; k >= n - G; --k) {
    total += binom;
    binom = binom * k / (n - k + 1);  // C(n,k-1)
  }
  return total;
}

}  // namespace aspec
