// Stunted regular cyclic polytopes P(a,b,m), the subspace Q(a,b,m) as a
// union of index-function polytopes Q(a,b,m;g), and certified checks of the
// four statements about them. Exponent combinatorics is exact; convexity
// tests run an exact LP on MPFR midpoints and certify separators with an
// explicit enclosure radius.

#ifndef CUSPK_POLYTOPELAB_HPP
#define CUSPK_POLYTOPELAB_HPP

#include "cuspk/homlinalg.hpp"
#include "cuspk/semigroup.hpp"

#include <mpfr.h>

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace cuspk {

class WeightOutOfRange : public PreconditionViolation {
 public:
  using PreconditionViolation::PreconditionViolation;
};

/// An index function g of weight p: a cyclic word of increments in {a, b}
/// with alpha a's and beta b's, started at g(0) = g0 (mod m).
struct IndexFunction {
  Int weight = 0;
  Int alpha = 0;
  Int beta = 0;
  std::vector<Int> word;              // increments g(t+1) - g(t), t = 0 .. alpha+beta-1
  Int g0 = 0;
  std::vector<Int> vertex_exponents;  // sorted residues g(t) mod m
};

/// Convex hull of the points (zeta_m^{e n})_{n in weights} for e in
/// vertex_exponents.
struct ExponentPolytope {
  Int m = 0;
  std::vector<Int> weights;
  std::vector<Int> vertex_exponents;

  friend bool operator==(const ExponentPolytope&, const ExponentPolytope&) = default;
  friend auto operator<=>(const ExponentPolytope&, const ExponentPolytope&) = default;
};

/// Integers in the closed interval [cm/a, dm/b].
inline std::vector<Int> weight_set(const Params& p, Int m) { return weights(p, m).closed_weights; }

namespace detail {

/// Lexicographically least rotation check.
inline bool is_canonical_rotation(const std::vector<Int>& w) {
  const std::size_t n = w.size();
  for (std::size_t s = 1; s < n; ++s)
    for (std::size_t k = 0; k < n; ++k) {
      const Int x = w[(s + k) % n], y = w[k];
      if (x < y) return false;
      if (x > y) break;
    }
  return true;
}

}  // namespace detail

/// All index functions of the given weight, one per (necklace, g0 mod m).
inline std::vector<IndexFunction> index_functions(const Params& p, Int m, Int weight) {
  if (m < 1) throw PreconditionViolation("index_functions: m must be positive");
  const BezoutPair bp = bezout(p);
  const Int alpha = checked_sub(checked_mul(bp.d, m), checked_mul(p.b(), weight));
  const Int beta = checked_sub(checked_mul(p.a(), weight), checked_mul(bp.c, m));
  if (alpha < 0 || beta < 0) throw WeightOutOfRange("index_functions: weight outside [cm/a, dm/b]");
  if (alpha + beta > 40) throw ResourceBound("index_functions: word length too large");
  std::vector<Int> word(static_cast<std::size_t>(alpha), p.a());
  word.insert(word.end(), static_cast<std::size_t>(beta), p.b());
  std::vector<IndexFunction> out;
  do {
    if (!detail::is_canonical_rotation(word)) continue;
    for (Int g0 = 0; g0 < m; ++g0) {
      IndexFunction f{weight, alpha, beta, word, g0, {}};
      Int g = g0;
      for (Int inc : word) {
        f.vertex_exponents.push_back(mod_floor(g, m));
        g += inc;
      }
      std::sort(f.vertex_exponents.begin(), f.vertex_exponents.end());
      out.push_back(std::move(f));
    }
  } while (std::next_permutation(word.begin(), word.end()));
  return out;
}

/// Necklaces with alpha a's and beta b's (index functions before crossing with g0).
inline std::size_t necklace_count(const Params& p, Int m, Int weight) {
  return index_functions(p, m, weight).size() / static_cast<std::size_t>(m);
}

/// The polytopes Q(a,b,m;g) over all weights, deduplicated by vertex set.
inline std::vector<ExponentPolytope> q_union(const Params& p, Int m) {
  const std::vector<Int> J = weight_set(p, m);
  std::set<std::vector<Int>> seen;
  std::vector<ExponentPolytope> out;
  for (Int w : J)
    for (auto& f : index_functions(p, m, w))
      if (seen.insert(f.vertex_exponents).second) out.push_back({m, J, f.vertex_exponents});
  std::sort(out.begin(), out.end());
  return out;
}

// -- MPFR enclosures ---------------------------------------------------------

namespace detail {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

inline Rational to_rational(mpfr_ptr x) {
  Rational q;
  mpfr_get_q(q.backend().data(), x);
  return q;
}

/// Midpoints of (cos 2 pi r, sin 2 pi r) for r in [0, 1/8].
inline std::pair<Rational, Rational> trig_base(const Rational& r, long bits) {
  if (r == 0) return {Rational(1), Rational(0)};
  const auto prec = static_cast<mpfr_prec_t>(bits + 32);
  Mpfr x(prec), s(prec), c(prec);
  mpfr_const_pi(x.get(), MPFR_RNDN);
  mpfr_mul_ui(x.get(), x.get(), 2, MPFR_RNDN);
  Rational rr = r;
  mpfr_mul_q(x.get(), x.get(), rr.backend().data(), MPFR_RNDN);
  mpfr_sin_cos(s.get(), c.get(), x.get(), MPFR_RNDN);
  return {to_rational(c.get()), to_rational(s.get())};
}

/// Reduction to the first octant keeps conjugate, antipodal and reflected
/// points exactly related and the values at multiples of 1/4 exact.
inline std::pair<Rational, Rational> trig(const Rational& r, long bits) {
  if (r > Rational(1, 2)) {
    auto [c, s] = trig(1 - r, bits);
    return {c, -s};
  }
  if (r > Rational(1, 4)) {
    auto [c, s] = trig(Rational(1, 2) - r, bits);
    return {-c, s};
  }
  if (r > Rational(1, 8)) {
    auto [c, s] = trig(Rational(1, 4) - r, bits);
    return {s, c};
  }
  auto cs = trig_base(r, bits);
  if (r == Rational(1, 8)) cs.second = cs.first;
  return cs;
}

}  // namespace detail

/// Midpoints of zeta_m^k in R^2 with a common enclosure radius 2^-bits per
/// coordinate.
class RootTable {
 public:
  RootTable(Int m, long bits) : m_(m), bits_(bits), radius_(Rational(1, BigInt(1) << static_cast<unsigned>(bits))) {
    if (m < 1) throw PreconditionViolation("RootTable: m must be positive");
    if (bits < 16) throw PreconditionViolation("RootTable: precision below 16 bits");
    for (Int k = 0; k < m; ++k) table_.push_back(detail::trig(Rational(k, m), bits));
  }

  Int modulus() const { return m_; }
  long bits() const { return bits_; }
  const Rational& radius() const { return radius_; }
  const std::pair<Rational, Rational>& operator()(Int k) const {
    return table_[static_cast<std::size_t>(mod_floor(k, m_))];
  }

  /// The point of e in the given summands, as (re, im) pairs.
  std::vector<Rational> point(Int e, const std::vector<Int>& weights) const {
    std::vector<Rational> v;
    for (Int n : weights) {
      const auto& [c, s] = (*this)(checked_mul(e, n));
      v.push_back(c);
      v.push_back(s);
    }
    return v;
  }

 private:
  Int m_;
  long bits_;
  Rational radius_;
  std::vector<std::pair<Rational, Rational>> table_;
};

// -- verdicts ---------------------------------------------------------------

enum class Status { Holds, FailsCandidate, Undecided, Unsupported };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Holds: return "HOLDS";
    case Status::FailsCandidate: return "FAILS_CANDIDATE";
    case Status::Undecided: return "UNDECIDED";
    case Status::Unsupported: return "UNSUPPORTED";
  }
  return "?";
}

struct Verdict {
  Status status = Status::Holds;
  long precision_bits = 0;
  std::string witness;
};

namespace detail {

inline std::string rational_list(const std::vector<Rational>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

inline std::string int_list(const std::vector<Int>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

/// True when normal . x > 0 holds for every x within `radius` (per
/// coordinate) of every point.
inline bool certify_positive(const std::vector<std::vector<Rational>>& points, const std::vector<Rational>& normal,
                             const Rational& radius) {
  Rational l1 = 0;
  for (const auto& h : normal) l1 += abs(h);
  for (const auto& x : points)
    if (!(dot(normal, x) - radius * l1 > 0)) return false;
  return true;
}

/// Outcome of asking whether the origin lies in conv(points). Near means a
/// combination of the points comes within `epsilon` (l1) of the origin but
/// no certified separator was found.
struct OriginTest {
  enum Kind { Separated, Inside, Near } kind;
  LpCertificate cert;
  Rational epsilon;
};

inline std::vector<std::vector<Rational>> inflate(const std::vector<std::vector<Rational>>& points, std::size_t dim,
                                                  const Rational& rho) {
  std::vector<std::vector<Rational>> out;
  for (const auto& x : points)
    for (std::size_t i = 0; i < dim; ++i)
      for (int sign : {1, -1}) {
        out.push_back(x);
        out.back()[i] += sign * rho;
      }
  return out;
}

inline Rational round_to_grid(const Rational& x, unsigned bits) {
  const BigInt scale = BigInt(1) << bits;
  const Rational y = x * scale;
  BigInt q = numerator(y) / denominator(y);
  return Rational(q, scale);
}

/// Separator search on points rounded to a 2^-48 grid; small rationals keep
/// the simplex cheap, and the result is certified against the exact data.
inline std::optional<LpCertificate> coarse_separator(const std::vector<std::vector<Rational>>& points,
                                                     std::size_t dim, const Rational& radius) {
  constexpr unsigned kGrid = 48;
  std::vector<std::vector<Rational>> coarse;
  for (const auto& x : points) {
    coarse.emplace_back();
    for (const auto& c : x) coarse.back().push_back(round_to_grid(c, kGrid));
  }
  const std::vector<Rational> zero(dim, Rational(0));
  LpCertificate cert = lp_separate(coarse, zero);
  if (!cert.separated) return std::nullopt;
  if (certify_positive(points, cert.normal, radius)) return cert;
  cert = lp_separate(inflate(coarse, dim, Rational(4 * static_cast<long>(dim), BigInt(1) << kGrid)), zero);
  if (cert.separated && certify_positive(points, cert.normal, radius)) return cert;
  return std::nullopt;
}

inline OriginTest origin_test(const std::vector<std::vector<Rational>>& points, std::size_t dim,
                              const Rational& radius) {
  if (radius < Rational(1, BigInt(1) << 60))
    if (auto c = coarse_separator(points, dim, radius)) return {OriginTest::Separated, *c, 0};
  const std::vector<Rational> zero(dim, Rational(0));
  LpCertificate cert = lp_separate(points, zero);
  if (!cert.separated) return {OriginTest::Inside, cert, Rational(dim) * radius};
  if (certify_positive(points, cert.normal, radius)) return {OriginTest::Separated, cert, 0};
  // Retry against the points inflated by an l1 ball of radius rho: any
  // separator found there has margin rho |h|_inf >= rho/dim |h|_1 and so
  // survives the enclosure radius.
  const Rational rho = 2 * Rational(dim) * radius;
  const auto inflated = inflate(points, dim, rho);
  LpCertificate wide = lp_separate(inflated, zero);
  if (wide.separated) {
    if (!certify_positive(points, wide.normal, radius))
      throw std::logic_error("origin_test: inflated separator failed certification");
    return {OriginTest::Separated, wide, 0};
  }
  LpCertificate near{false, std::vector<Rational>(points.size(), Rational(0)), {}, 0};
  for (std::size_t k = 0; k < inflated.size(); ++k) near.combination[k / (2 * dim)] += wide.combination[k];
  return {OriginTest::Near, near, rho + Rational(dim) * radius};
}

inline std::string log2_bound(const Rational& eps) {
  // smallest k with eps <= 2^-k, as "2^-k"
  long k = 0;
  Rational bound = 1;
  while (eps <= bound / 2 && k < 100000) {
    bound /= 2;
    ++k;
  }
  return "2^-" + std::to_string(k);
}

}  // namespace detail

/// Statement (1): no Q(a,b,m;g) contains the origin.
inline Verdict check_c1(const Params& p, Int m, long precision = 128) {
  Verdict v{Status::Holds, precision, ""};
  if (!is_member(p, m)) {
    v.witness = "vacuous: m not in <a,b>";
    return v;
  }
  const RootTable roots(m, precision);
  const auto polys = q_union(p, m);
  std::size_t certified = 0;
  for (const auto& q : polys) {
    std::vector<std::vector<Rational>> pts;
    for (Int e : q.vertex_exponents) pts.push_back(roots.point(e, q.weights));
    const auto t = detail::origin_test(pts, 2 * q.weights.size(), roots.radius());
    if (t.kind == detail::OriginTest::Inside) {
      v.status = Status::FailsCandidate;
      v.witness = "vertices " + detail::int_list(q.vertex_exponents) + " combination " +
                  detail::rational_list(t.cert.combination) + " within " + detail::log2_bound(t.epsilon) +
                  " of the origin";
      return v;
    }
    if (t.kind == detail::OriginTest::Near) {
      v.status = Status::FailsCandidate;
      v.witness = "vertices " + detail::int_list(q.vertex_exponents) + " combination " +
                  detail::rational_list(t.cert.combination) + " within " + detail::log2_bound(t.epsilon) +
                  " of the origin";
      return v;
    }
    ++certified;
  }
  if (v.status == Status::Holds) v.witness = std::to_string(certified) + " separators certified";
  return v;
}

/// Statement (2) (which = 'a') or (3) (which = 'b'): the intersection of
/// Q(a,b,m) with the summand C(cm/a) (resp. C(dm/b)) is the set of a-th
/// (resp. b-th) roots of unity there.
inline Verdict check_c2_c3(const Params& p, Int m, long precision = 128, char which = 'a') {
  if (which != 'a' && which != 'b') throw PreconditionViolation("check_c2_c3: which must be 'a' or 'b'");
  const Int div = which == 'a' ? p.a() : p.b();
  if (m % div != 0) throw PreconditionViolation("check_c2_c3: divisor does not divide m");
  const BezoutPair bp = bezout(p);
  const Int special = which == 'a' ? bp.c * m / p.a() : bp.d * m / p.b();
  Verdict v{Status::Holds, precision, ""};
  const RootTable roots(m, precision);
  const auto polys = q_union(p, m);
  std::vector<Int> others;
  for (Int n : weight_set(p, m))
    if (n != special) others.push_back(n);
  // class of a vertex in the special summand: e * special mod m
  std::set<Int> hit;
  for (const auto& q : polys) {
    std::vector<std::vector<Rational>> pts;
    for (Int e : q.vertex_exponents) pts.push_back(roots.point(e, others));
    const auto t = detail::origin_test(pts, 2 * others.size(), roots.radius());
    if (t.kind == detail::OriginTest::Separated) continue;
    if (t.kind == detail::OriginTest::Near) {
      v.status = Status::Undecided;
      v.witness = "fiber over the origin not resolved for vertices " + detail::int_list(q.vertex_exponents);
      continue;
    }
    // Pure-class sub-hulls: two feasible classes would put two distinct
    // roots of unity, and the segment between them, in the intersection.
    std::map<Int, std::vector<std::vector<Rational>>> by_class;
    for (std::size_t k = 0; k < pts.size(); ++k) by_class[mod_floor(q.vertex_exponents[k] * special, m)].push_back(pts[k]);
    std::vector<Int> feasible;
    bool unresolved = false;
    for (const auto& [cls, sub] : by_class) {
      const auto u = detail::origin_test(sub, 2 * others.size(), roots.radius());
      if (u.kind == detail::OriginTest::Inside) feasible.push_back(cls);
      if (u.kind == detail::OriginTest::Near) unresolved = true;
    }
    if (feasible.size() > 1) {
      v.status = Status::FailsCandidate;
      v.witness = "vertices " + detail::int_list(q.vertex_exponents) + " meet the summand at exponents " +
                  detail::int_list(feasible);
      return v;
    }
    if (unresolved) {
      v.status = Status::Undecided;
      v.witness = "class separator not certified for vertices " + detail::int_list(q.vertex_exponents);
      continue;
    }
    std::set<Int> classes;
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (t.cert.combination[k] != 0) classes.insert(mod_floor(q.vertex_exponents[k] * special, m));
    if (classes.size() == 1) {
      hit.insert(*classes.begin());
      continue;
    }
    // A mixed combination: its special coordinate sits strictly inside the disk.
    Rational re = 0, im = 0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const auto& [c, s] = roots(q.vertex_exponents[k] * special);
      re += t.cert.combination[k] * c;
      im += t.cert.combination[k] * s;
    }
    if (re * re + im * im < 1 - 4 * roots.radius()) {
      v.status = Status::FailsCandidate;
      v.witness = "vertices " + detail::int_list(q.vertex_exponents) + " combination " +
                  detail::rational_list(t.cert.combination) + " meets the summand off the roots of unity";
      return v;
    }
    v.status = Status::Undecided;
    v.witness = "mixed combination near the unit circle for vertices " + detail::int_list(q.vertex_exponents);
  }
  if (v.status != Status::Holds) return v;
  // The special coordinate of zeta_m^e is zeta_div^{...}; the div-th roots
  // are the multiples of m/div.
  std::set<Int> expected;
  for (Int k = 0; k < div; ++k) expected.insert(k * (m / div));
  if (hit != expected) {
    v.status = Status::FailsCandidate;
    std::vector<Int> h(hit.begin(), hit.end());
    v.witness = "intersection exponents " + detail::int_list(h) + " differ from the roots of unity";
    return v;
  }
  v.witness = "intersection is the " + std::to_string(div) + " roots of unity";
  return v;
}

/// Statement (4): the boundary of P(a,b,m) lies in Q(a,b,m). Decided
/// combinatorially when P is a polygon (|J| = 1); vacuous when J is empty.
inline Verdict check_c4(const Params& p, Int m) {
  if (m < 1 || m % p.a() == 0 || m % p.b() == 0)
    throw PreconditionViolation("check_c4: needs a and b not dividing m");
  Verdict v{Status::Holds, 0, ""};
  const WeightData wd = weights(p, m);
  if (wd.closed_weights.empty()) {
    v.witness = "vacuous: P is a point";
    return v;
  }
  if (wd.closed_weights.size() > 1) {
    v.status = Status::Unsupported;
    v.witness = "facets of P unknown for |J| = " + std::to_string(wd.closed_weights.size());
    return v;
  }
  const WeightInfo& w = wd.info.front();
  const Int mp = w.m1, np = w.n1;
  if (mp < 3) {
    v.status = Status::Unsupported;
    v.witness = "P is not full-dimensional";
    return v;
  }
  // Polygon vertex of exponent e is zeta_{m'}^{e n'}; edges join k and k+1.
  std::set<Int> covered;
  for (const auto& f : index_functions(p, m, w.n)) {
    std::set<Int> idx;
    for (Int e : f.vertex_exponents) idx.insert(mod_floor(e * np, mp));
    for (Int k : idx)
      if (idx.count(mod_floor(k + 1, mp))) covered.insert(k);
  }
  if (static_cast<Int>(covered.size()) != mp) {
    v.status = Status::FailsCandidate;
    v.witness = std::to_string(covered.size()) + " of " + std::to_string(mp) + " edges covered";
    return v;
  }
  v.witness = "all " + std::to_string(mp) + " edges covered";
  return v;
}

/// Re-runs check(precision) with doubled precision while UNDECIDED.
inline Verdict with_escalation(const std::function<Verdict(long)>& check, long start = 128, long max = 1024) {
  Verdict v = check(start);
  for (long bits = 2 * start; v.status == Status::Undecided && bits <= max; bits *= 2) v = check(bits);
  return v;
}

}  // namespace cuspk

#endif
