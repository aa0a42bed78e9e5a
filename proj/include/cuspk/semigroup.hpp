// Arithmetic of the two-generator numerical semigroup <a, b>: the count of
// positive representations ell(a,b,m), the truncation sets S(a,b,r), the
// Bezout data (c, d) and the weight intervals (cm/a, dm/b) and [cm/a, dm/b].

#ifndef CUSPK_SEMIGROUP_HPP
#define CUSPK_SEMIGROUP_HPP

#include "cuspk/common.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <vector>

namespace cuspk {

/// A pair of relatively prime integers 1 < a < b.
class Params {
 public:
  Params(Int a, Int b) : a_(a), b_(b) {
    if (!(1 < a && a < b)) throw PreconditionViolation("Params: need 1 < a < b");
    if (gcd(a, b) != 1) throw PreconditionViolation("Params: a and b must be relatively prime");
    checked_mul(checked_mul(a, b), 64);  // headroom for the weight bookkeeping
  }

  Int a() const { return a_; }
  Int b() const { return b_; }
  Int ab() const { return a_ * b_; }

  friend bool operator==(const Params&, const Params&) = default;

 private:
  Int a_;
  Int b_;
};

/// A finite set of positive integers closed under taking divisors.
class TruncationSet {
 public:
  TruncationSet() = default;

  /// Sorts and deduplicates; throws if the result is not divisor-closed.
  explicit TruncationSet(std::vector<Int> elements) : elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    if (!elements_.empty() && elements_.front() < 1)
      throw PreconditionViolation("TruncationSet: elements must be positive");
    if (!divisor_closed()) throw PreconditionViolation("TruncationSet: not closed under divisors");
  }

  /// The divisors of n, written <n>.
  static TruncationSet divisors_of(Int n) {
    if (n < 1) throw PreconditionViolation("divisors_of: n must be positive");
    std::vector<Int> out;
    for (Int d = 1; d <= n; ++d)
      if (n % d == 0) out.push_back(d);
    return TruncationSet(std::move(out));
  }

  const std::vector<Int>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  bool contains(Int x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

  /// Index of x in the sorted element list; x must be a member.
  std::size_t index_of(Int x) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), x);
    if (it == elements_.end() || *it != x) throw PreconditionViolation("TruncationSet: not a member");
    return static_cast<std::size_t>(it - elements_.begin());
  }

  /// S/n = { s : ns in S }.
  TruncationSet divide(Int n) const {
    if (n < 1) throw PreconditionViolation("divide_set: n must be positive");
    std::vector<Int> out;
    for (Int x : elements_)
      if (x % n == 0) out.push_back(x / n);
    return TruncationSet(std::move(out));
  }

  bool is_subset_of(const TruncationSet& other) const {
    return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                         elements_.end());
  }

  friend bool operator==(const TruncationSet&, const TruncationSet&) = default;

  friend std::ostream& operator<<(std::ostream& os, const TruncationSet& s) {
    os << '{';
    for (std::size_t i = 0; i < s.elements_.size(); ++i) os << (i ? "," : "") << s.elements_[i];
    return os << '}';
  }

 private:
  bool divisor_closed() const {
    for (Int x : elements_)
      for (Int d = 1; d * d <= x; ++d)
        if (x % d == 0 && (!contains(d) || !contains(x / d))) return false;
    return true;
  }

  std::vector<Int> elements_;
};

inline TruncationSet divide_set(const TruncationSet& s, Int n) { return s.divide(n); }

/// Integers (c, d) with a*d - b*c = 1.
struct BezoutPair {
  Int c;
  Int d;
  friend bool operator==(const BezoutPair&, const BezoutPair&) = default;
};

/// The canonical pair, normalized to 1 <= c < a.
inline BezoutPair bezout(const Params& p) {
  // a*d - b*c = 1  <=>  b*c = -1 (mod a)
  Int s, t;
  ext_gcd(p.b(), p.a(), s, t);  // s*b + t*a = 1, so c = -s mod a
  Int c = mod_floor(-s, p.a());
  Int d = (1 + p.b() * c) / p.a();
  BezoutPair bp{c, d};
  if (p.a() * bp.d - p.b() * bp.c != 1 || bp.c < 1 || bp.c >= p.a())
    throw std::logic_error("bezout: normalization failed");
  return bp;
}

/// Number of integers in the open interval (cm/a, dm/b).
inline Int open_interval_count(const Params& p, const BezoutPair& bp, Int m) {
  Int lo = floor_div(checked_mul(bp.c, m), p.a());      // largest integer <= cm/a
  Int hi = ceil_div(checked_mul(bp.d, m), p.b()) - 1;  // largest integer < dm/b
  return std::max<Int>(0, hi - lo);
}

/// ell(a,b,m): the number of pairs of positive integers (i,j) with ai + bj = m.
inline Int ell(const Params& p, Int m) {
  if (m < 1) throw PreconditionViolation("ell: m must be positive");
  return open_interval_count(p, bezout(p), m);
}

/// Non-negative representability m = ai + bj with i, j >= 0.
inline bool is_member(const Params& p, Int m) {
  if (m < 0) throw PreconditionViolation("is_member: m must be non-negative");
  for (Int j = 0; j < p.a() && checked_mul(j, p.b()) <= m; ++j)
    if ((m - j * p.b()) % p.a() == 0) return true;
  return false;
}

/// Sylvester's conductor (a-1)(b-1): the smallest v such that every m >= v
/// is representable.
inline Int conductor(const Params& p) { return (p.a() - 1) * (p.b() - 1); }

/// Membership in <a, b>, tabulated once up to a bound and read-only afterwards.
class MembershipTable {
 public:
  explicit MembershipTable(const Params& p) : MembershipTable(p, 4 * p.ab() + conductor(p)) {}

  MembershipTable(const Params& p, Int bound) : params_(p), conductor_(conductor(p)) {
    table_.assign(static_cast<std::size_t>(std::max<Int>(bound, 0) + 1), false);
    table_[0] = true;
    for (std::size_t m = 1; m < table_.size(); ++m) {
      auto mm = static_cast<Int>(m);
      table_[m] = (mm >= p.a() && table_[m - static_cast<std::size_t>(p.a())]) ||
                  (mm >= p.b() && table_[m - static_cast<std::size_t>(p.b())]);
    }
  }

  bool operator()(Int m) const {
    if (m < 0) return false;
    if (static_cast<std::size_t>(m) < table_.size()) return table_[static_cast<std::size_t>(m)];
    return m >= conductor_ || is_member(params_, m);
  }

  const Params& params() const { return params_; }

 private:
  Params params_;
  Int conductor_;
  std::vector<bool> table_;
};

/// S(a,b,r) = { m : ell(a,b,m) <= r }.
inline TruncationSet truncation_S(const Params& p, Int r) {
  if (r < 0) throw PreconditionViolation("truncation_S: r must be non-negative");
  // ell(m) >= r+1 as soon as m > (r+1)ab, so the scan is exhaustive.
  const Int bound = checked_mul(r + 1, p.ab());
  const BezoutPair bp = bezout(p);
  std::vector<Int> out;
  for (Int m = 1; m <= bound; ++m)
    if (open_interval_count(p, bp, m) <= r) out.push_back(m);
  return TruncationSet(std::move(out));
}

/// Everything the polytope and representation code needs to know about one
/// weight n in [cm/a, dm/b].
struct WeightInfo {
  Int n;          // the weight itself
  Int residue;    // n mod m
  bool interior;  // n lies in the open interval
  Int i, j;       // m = a*i + b*j, n = c*i + d*j
  Int q;          // gcd(m, n) = gcd(i, j)
  Int m1, n1;     // m/q, n/q
  Int i1, j1;     // i/q, j/q
  Int r, s;       // r*i1 + s*j1 = 1
  Int k, l;       // (k l) = (r s) [[d, -b], [-c, a]]; k*m1 + l*n1 = 1
};

struct WeightData {
  Int m;
  BezoutPair bezout;
  std::vector<Int> open_weights;
  std::vector<Int> closed_weights;
  std::vector<WeightInfo> info;  // one entry per closed weight, same order

  const WeightInfo& at(Int n) const {
    for (const auto& w : info)
      if (w.n == n) return w;
    throw PreconditionViolation("WeightData: weight not in J(a,b,m)");
  }

  /// Sorted residues of the open weights modulo m; independent of the
  /// Bezout choice.
  std::vector<Int> open_residues() const {
    std::vector<Int> out;
    for (Int n : open_weights) out.push_back(mod_floor(n, m));
    std::sort(out.begin(), out.end());
    return out;
  }
};

namespace detail {

inline WeightInfo derive_weight(const Params& p, const BezoutPair& bp, Int m, Int n, bool interior) {
  WeightInfo w{};
  w.n = n;
  w.residue = mod_floor(n, m);
  w.interior = interior;
  w.i = checked_sub(checked_mul(bp.d, m), checked_mul(p.b(), n));
  w.j = checked_sub(checked_mul(p.a(), n), checked_mul(bp.c, m));
  w.q = gcd(m, n);
  if (w.q != gcd(w.i, w.j)) throw std::logic_error("weights: gcd(m,n) != gcd(i,j)");
  w.m1 = m / w.q;
  w.n1 = n / w.q;
  w.i1 = w.i / w.q;
  w.j1 = w.j / w.q;
  if (w.i > 0 && w.j > 0) {
    // 1 <= s <= i1 with s*j1 = 1 (mod i1); then 0 <= -r <= j1 - 1.
    if (w.i1 == 1) {
      w.s = 1;
    } else {
      Int inv, unused;
      ext_gcd(w.j1, w.i1, inv, unused);
      w.s = mod_floor(inv, w.i1);
      if (w.s == 0) w.s = w.i1;
    }
    w.r = (1 - w.s * w.j1) / w.i1;
  } else if (w.j == 0) {
    w.r = 1;
    w.s = 0;
  } else {
    w.r = 0;
    w.s = 1;
  }
  w.k = w.r * bp.d - w.s * bp.c;
  w.l = -w.r * p.b() + w.s * p.a();
  if (w.r * w.i1 + w.s * w.j1 != 1 || w.k * w.m1 + w.l * w.n1 != 1)
    throw std::logic_error("weights: Bezout bookkeeping failed");
  return w;
}

}  // namespace detail

/// The open and closed weight sets for m, with the per-weight data.
inline WeightData weights(const Params& p, Int m, std::optional<BezoutPair> choice = std::nullopt) {
  if (m < 1) throw PreconditionViolation("weights: m must be positive");
  const BezoutPair bp = choice.value_or(bezout(p));
  if (p.a() * bp.d - p.b() * bp.c != 1) throw PreconditionViolation("weights: not a Bezout pair");
  WeightData wd{m, bp, {}, {}, {}};
  const Int cm = checked_mul(bp.c, m);
  const Int dm = checked_mul(bp.d, m);
  const Int lo = ceil_div(cm, p.a());   // smallest integer >= cm/a
  const Int hi = floor_div(dm, p.b());  // largest integer <= dm/b
  for (Int n = lo; n <= hi; ++n) {
    const bool left_end = checked_mul(n, p.a()) == cm;
    const bool right_end = checked_mul(n, p.b()) == dm;
    const bool interior = !left_end && !right_end;
    wd.closed_weights.push_back(n);
    if (interior) wd.open_weights.push_back(n);
    wd.info.push_back(detail::derive_weight(p, bp, m, n, interior));
  }
  return wd;
}

}  // namespace cuspk

#endif  // CUSPK_SEMIGROUP_HPP
