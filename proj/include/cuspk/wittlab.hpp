// Big Witt vectors. Over F_p only the additive group W_S(F_p) is modelled,
// through its p-typical splitting into cyclic p-groups, together with V_n,
// F_n and restriction as integer matrices. Over Z a ghost-coordinate ring
// is provided for checking the operator identities exactly.

#ifndef CUSPK_WITTLAB_HPP
#define CUSPK_WITTLAB_HPP

#include "cuspk/homlinalg.hpp"
#include "cuspk/semigroup.hpp"

#include <map>
#include <vector>

namespace cuspk {

class IntegralityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// S = { e * p^i : e an orbit representative, 0 <= i < length }.
struct Orbit {
  Int e;
  Int length;
  friend bool operator==(const Orbit&, const Orbit&) = default;
};

class PTypicalProfile {
 public:
  PTypicalProfile(TruncationSet s, Int p) : p_(p), set_(std::move(s)) {
    if (!is_prime(p)) throw PreconditionViolation("profile: p must be prime");
    for (Int x : set_.elements()) {
      if (x % p == 0) continue;
      Int len = 0;
      for (Int y = x; set_.contains(y); y = checked_mul(y, p)) ++len;
      orbits_.push_back({x, len});
    }
    Int total = 0;
    for (const auto& o : orbits_) total += o.length;
    if (total != static_cast<Int>(set_.size())) throw std::logic_error("profile: orbit lengths do not cover S");
  }

  Int p() const { return p_; }
  const TruncationSet& set() const { return set_; }
  const std::vector<Orbit>& orbits() const { return orbits_; }
  std::size_t size() const { return orbits_.size(); }

  /// Index of the orbit with representative e, if present.
  std::optional<std::size_t> find(Int e) const {
    for (std::size_t k = 0; k < orbits_.size(); ++k)
      if (orbits_[k].e == e) return k;
    return std::nullopt;
  }

  /// Orders p^{length} of the cyclic factors, in orbit order.
  std::vector<BigInt> orders() const {
    std::vector<BigInt> out;
    for (const auto& o : orbits_) out.push_back(big_pow(BigInt(p_), static_cast<unsigned long>(o.length)));
    return out;
  }

  /// The factor orders as an abelian group in invariant-factor form.
  AbelianGroup group() const {
    auto ord = orders();
    IntMatrix diag(ord.size(), ord.size());
    for (std::size_t i = 0; i < ord.size(); ++i) diag(i, i) = ord[i];
    return cokernel(diag);
  }

 private:
  Int p_;
  TruncationSet set_;
  std::vector<Orbit> orbits_;
};

inline PTypicalProfile profile(const TruncationSet& s, Int p) { return PTypicalProfile(s, p); }

/// Product of cyclic groups Z/orders[i].
struct FiniteAbelianPresentation {
  std::vector<BigInt> orders;

  BigInt order() const {
    BigInt n = 1;
    for (const auto& d : orders) n *= d;
    return n;
  }
  friend bool operator==(const FiniteAbelianPresentation&, const FiniteAbelianPresentation&) = default;
};

/// Homomorphism of finite abelian presentations; matrix is codomain x domain
/// with rows reduced modulo the codomain orders.
struct AbelianMap {
  FiniteAbelianPresentation domain;
  FiniteAbelianPresentation codomain;
  IntMatrix matrix;

  void reduce() {
    for (std::size_t i = 0; i < matrix.rows(); ++i)
      for (std::size_t j = 0; j < matrix.cols(); ++j) {
        BigInt& v = matrix(i, j);
        v %= codomain.orders[i];
        if (v < 0) v += codomain.orders[i];
      }
  }

  /// Each column must have order dividing the domain order it comes from.
  bool well_defined() const {
    for (std::size_t j = 0; j < matrix.cols(); ++j)
      for (std::size_t i = 0; i < matrix.rows(); ++i)
        if ((matrix(i, j) * domain.orders[j]) % codomain.orders[i] != 0) return false;
    return true;
  }

  bool is_zero() const {
    for (std::size_t i = 0; i < matrix.rows(); ++i)
      for (std::size_t j = 0; j < matrix.cols(); ++j)
        if (matrix(i, j) % codomain.orders[i] != 0) return false;
    return true;
  }

  friend AbelianMap compose(const AbelianMap& g, const AbelianMap& f) {
    if (!(g.domain == f.codomain)) throw DimensionMismatch("compose: incompatible presentations");
    AbelianMap out{f.domain, g.codomain, g.matrix * f.matrix};
    out.reduce();
    return out;
  }

  friend bool operator==(const AbelianMap& x, const AbelianMap& y) {
    if (!(x.domain == y.domain) || !(x.codomain == y.codomain)) return false;
    AbelianMap a = x, b = y;
    a.reduce();
    b.reduce();
    return a.matrix == b.matrix;
  }
};

inline FiniteAbelianPresentation presentation(const PTypicalProfile& pr) { return {pr.orders()}; }

/// Multiplication by k on W_S(F_p).
inline AbelianMap scalar_map(const PTypicalProfile& pr, Int k) {
  AbelianMap out{presentation(pr), presentation(pr), IntMatrix(pr.size(), pr.size())};
  for (std::size_t i = 0; i < pr.size(); ++i) out.matrix(i, i) = k;
  out.reduce();
  return out;
}

namespace detail {

// n = p^v * s with p not dividing s.
inline std::pair<Int, Int> split_prime_power(Int n, Int p) {
  Int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return {v, n};
}

}  // namespace detail

/// V_n : W_{S/n}(F_p) -> W_S(F_p).
inline AbelianMap verschiebung(const TruncationSet& s, Int n, Int p) {
  if (n < 1) throw PreconditionViolation("verschiebung: n must be positive");
  const PTypicalProfile dom(s.divide(n), p), cod(s, p);
  const auto [v, sp] = detail::split_prime_power(n, p);
  AbelianMap out{presentation(dom), presentation(cod), IntMatrix(cod.size(), dom.size())};
  for (std::size_t j = 0; j < dom.size(); ++j) {
    auto i = cod.find(checked_mul(sp, dom.orbits()[j].e));
    if (!i) throw std::logic_error("verschiebung: target factor missing");
    out.matrix(*i, j) = BigInt(sp) * big_pow(BigInt(p), static_cast<unsigned long>(v));
  }
  out.reduce();
  return out;
}

/// F_n : W_S(F_p) -> W_{S/n}(F_p).
inline AbelianMap frobenius(const TruncationSet& s, Int n, Int p) {
  if (n < 1) throw PreconditionViolation("frobenius: n must be positive");
  const PTypicalProfile dom(s, p), cod(s.divide(n), p);
  const Int sp = detail::split_prime_power(n, p).second;
  AbelianMap out{presentation(dom), presentation(cod), IntMatrix(cod.size(), dom.size())};
  for (std::size_t j = 0; j < dom.size(); ++j) {
    const Int e = dom.orbits()[j].e;
    if (e % sp != 0) continue;
    if (auto i = cod.find(e / sp)) out.matrix(*i, j) = 1;
  }
  out.reduce();
  return out;
}

/// R^S_T : W_S(F_p) -> W_T(F_p) for T a truncation subset of S.
inline AbelianMap restriction(const TruncationSet& s, const TruncationSet& t, Int p) {
  if (!t.is_subset_of(s)) throw PreconditionViolation("restriction: T is not contained in S");
  const PTypicalProfile dom(s, p), cod(t, p);
  AbelianMap out{presentation(dom), presentation(cod), IntMatrix(cod.size(), dom.size())};
  for (std::size_t i = 0; i < cod.size(); ++i) out.matrix(i, *dom.find(cod.orbits()[i].e)) = 1;
  out.reduce();
  return out;
}

/// W_{S(a,b,r)} / (V_a W_{S/a} + V_b W_{S/b}) over F_p in degree q = 2r,
/// compared with W_T(F_p) for T = { m in S : a, b do not divide m }.
struct KGroupResult {
  Int a = 0, b = 0, p = 0, q = 0;
  AbelianGroup group;
  Int length = 0;
  Int expected_length = 0;
  AbelianGroup restricted;       // W_T(F_p)
  bool restriction_iso = false;  // R_T kills both images and the orders agree
  bool perfect_field_only = false;
};

inline Int p_adic_length(const AbelianGroup& g, Int p) {
  if (g.rank != 0) throw PreconditionViolation("p_adic_length: group is infinite");
  Int len = 0;
  for (BigInt d : g.torsion)
    while (d > 1) {
      if (d % p != 0) throw PreconditionViolation("p_adic_length: not a p-group");
      d /= p;
      ++len;
    }
  return len;
}

inline KGroupResult relative_k_group(const Params& params, Int p, Int q) {
  if (!is_prime(p)) throw PreconditionViolation("relative_k_group: p must be prime");
  KGroupResult res;
  res.a = params.a();
  res.b = params.b();
  res.p = p;
  res.q = q;
  res.perfect_field_only = params.a() % p == 0 || params.b() % p == 0;
  if (q < 0 || q % 2 != 0) {
    res.restriction_iso = true;
    return res;
  }
  const Int r = q / 2;
  res.expected_length = (2 * r + 1) * (params.a() - 1) * (params.b() - 1) / 2;
  const TruncationSet s = truncation_S(params, r);
  const PTypicalProfile pr(s, p);
  const AbelianMap va = verschiebung(s, params.a(), p);
  const AbelianMap vb = verschiebung(s, params.b(), p);
  const auto orders = pr.orders();
  const std::size_t k = pr.size();
  IntMatrix rel(k, k + va.matrix.cols() + vb.matrix.cols());
  for (std::size_t i = 0; i < k; ++i) {
    rel(i, i) = orders[i];
    for (std::size_t j = 0; j < va.matrix.cols(); ++j) rel(i, k + j) = va.matrix(i, j);
    for (std::size_t j = 0; j < vb.matrix.cols(); ++j) rel(i, k + va.matrix.cols() + j) = vb.matrix(i, j);
  }
  res.group = cokernel(rel);
  res.length = p_adic_length(res.group, p);

  std::vector<Int> t_elems;
  for (Int m : s.elements())
    if (m % params.a() != 0 && m % params.b() != 0) t_elems.push_back(m);
  const TruncationSet t(t_elems);
  const PTypicalProfile tp(t, p);
  res.restricted = tp.group();
  const AbelianMap rt = restriction(s, t, p);
  // R_T is onto; killing both images and matching orders makes it an iso.
  res.restriction_iso = compose(rt, va).is_zero() && compose(rt, vb).is_zero() &&
                        res.group.torsion_order() == res.restricted.torsion_order();
  return res;
}

/// Element of W_S(Z) stored by Witt coordinates, one per element of S.
class GhostWitt {
 public:
  explicit GhostWitt(TruncationSet s) : set_(std::move(s)), coords_(set_.size()) {}
  GhostWitt(TruncationSet s, std::vector<BigInt> coords) : set_(std::move(s)), coords_(std::move(coords)) {
    if (coords_.size() != set_.size()) throw PreconditionViolation("GhostWitt: coordinate count mismatch");
  }

  const TruncationSet& set() const { return set_; }
  const std::vector<BigInt>& coords() const { return coords_; }
  const BigInt& operator[](Int n) const { return coords_[set_.index_of(n)]; }

  /// w_n = sum over d | n of d * x_d^{n/d}.
  std::vector<BigInt> ghost() const {
    const auto& el = set_.elements();
    std::vector<BigInt> w(el.size());
    for (std::size_t k = 0; k < el.size(); ++k)
      for (std::size_t j = 0; j <= k; ++j)
        if (el[k] % el[j] == 0)
          w[k] += BigInt(el[j]) * big_pow(coords_[j], static_cast<unsigned long>(el[k] / el[j]));
    return w;
  }

  /// Inverse of the ghost map; throws when a recursive division is inexact.
  static GhostWitt from_ghost(const TruncationSet& s, const std::vector<BigInt>& w) {
    if (w.size() != s.size()) throw PreconditionViolation("unghost: length mismatch");
    const auto& el = s.elements();
    std::vector<BigInt> x(el.size());
    for (std::size_t k = 0; k < el.size(); ++k) {
      BigInt rest = w[k];
      for (std::size_t j = 0; j < k; ++j)
        if (el[k] % el[j] == 0) rest -= BigInt(el[j]) * big_pow(x[j], static_cast<unsigned long>(el[k] / el[j]));
      if (rest % el[k] != 0) throw IntegralityViolation("unghost: inexact division at " + std::to_string(el[k]));
      x[k] = rest / el[k];
    }
    return GhostWitt(s, std::move(x));
  }

  friend bool operator==(const GhostWitt&, const GhostWitt&) = default;

 private:
  TruncationSet set_;
  std::vector<BigInt> coords_;
};

inline std::vector<BigInt> ghost(const GhostWitt& x) { return x.ghost(); }
inline GhostWitt unghost(const TruncationSet& s, const std::vector<BigInt>& w) { return GhostWitt::from_ghost(s, w); }

namespace detail {

template <typename Op>
GhostWitt ghostwise(const GhostWitt& x, const GhostWitt& y, Op op) {
  if (!(x.set() == y.set())) throw PreconditionViolation("Witt operation: truncation sets differ");
  auto wx = x.ghost(), wy = y.ghost();
  for (std::size_t k = 0; k < wx.size(); ++k) wx[k] = op(wx[k], wy[k]);
  return unghost(x.set(), wx);
}

}  // namespace detail

inline GhostWitt witt_add(const GhostWitt& x, const GhostWitt& y) {
  return detail::ghostwise(x, y, [](const BigInt& u, const BigInt& v) { return BigInt(u + v); });
}

inline GhostWitt witt_mul(const GhostWitt& x, const GhostWitt& y) {
  return detail::ghostwise(x, y, [](const BigInt& u, const BigInt& v) { return BigInt(u * v); });
}

inline GhostWitt witt_scale(const GhostWitt& x, Int k) {
  auto w = x.ghost();
  for (auto& v : w) v *= k;
  return unghost(x.set(), w);
}

/// V_n : W_{S/n} -> W_S, (V_n x)_m = x_{m/n} when n | m.
inline GhostWitt witt_V(const TruncationSet& s, const GhostWitt& x, Int n) {
  if (n < 1) throw PreconditionViolation("witt_V: n must be positive");
  if (!(x.set() == s.divide(n))) throw PreconditionViolation("witt_V: argument must live on S/n");
  std::vector<BigInt> c(s.size());
  const auto& el = s.elements();
  for (std::size_t k = 0; k < el.size(); ++k)
    if (el[k] % n == 0) c[k] = x[el[k] / n];
  return GhostWitt(s, std::move(c));
}

/// F_n : W_S -> W_{S/n}, w_m(F_n x) = w_{mn}(x).
inline GhostWitt witt_F(const GhostWitt& x, Int n) {
  if (n < 1) throw PreconditionViolation("witt_F: n must be positive");
  const TruncationSet target = x.set().divide(n);
  const auto w = x.ghost();
  std::vector<BigInt> out;
  for (Int m : target.elements()) out.push_back(w[x.set().index_of(m * n)]);
  return unghost(target, out);
}

/// R_T : W_S -> W_T, coordinate projection.
inline GhostWitt witt_restrict(const GhostWitt& x, const TruncationSet& t) {
  if (!t.is_subset_of(x.set())) throw PreconditionViolation("witt_restrict: T is not contained in S");
  std::vector<BigInt> c;
  for (Int m : t.elements()) c.push_back(x[m]);
  return GhostWitt(t, std::move(c));
}

/// [a]_S = (a, 0, 0, ...).
inline GhostWitt teichmuller(const TruncationSet& s, const BigInt& a) {
  std::vector<BigInt> c(s.size());
  if (!s.empty()) c[0] = a;
  if (!s.empty() && s.elements()[0] != 1) throw std::logic_error("teichmuller: nonempty S must contain 1");
  return GhostWitt(s, std::move(c));
}

}  // namespace cuspk

#endif  // CUSPK_WITTLAB_HPP
