// The simplicial complex Sigma(a,b,m) on the vertex set C_m, the quotient
// X(a,b,m) = Delta^{m-1} / Sigma(a,b,m) through its relative chain complex,
// and the homological comparisons with Y(a,b,m).

#ifndef CUSPK_SIMPLICIALX_HPP
#define CUSPK_SIMPLICIALX_HPP

#include "cuspk/cyclicbar.hpp"
#include "cuspk/homlinalg.hpp"
#include "cuspk/semigroup.hpp"

#include <bit>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace cuspk {

/// Largest m for which faces fit in a mask.
inline constexpr Int kMaxFaceModulus = 62;

/// Default cap on the number of cells of the relative complex of X.
inline constexpr std::size_t kDefaultCellBudget = std::size_t{1} << 17;

/// A non-empty subset of C_m, identified with a set of exponents in [0, m).
struct CmFace {
  Int m = 0;
  std::uint64_t members = 0;

  int size() const { return std::popcount(members); }
  int dimension() const { return size() - 1; }

  std::vector<Int> exponents() const {
    std::vector<Int> out;
    for (Int k = 0; k < m; ++k)
      if (members >> k & 1) out.push_back(k);
    return out;
  }

  /// Cyclic differences of the sorted exponents; they sum to m.
  std::vector<Int> gaps() const {
    const auto e = exponents();
    std::vector<Int> out;
    for (std::size_t k = 0; k + 1 < e.size(); ++k) out.push_back(e[k + 1] - e[k]);
    if (!e.empty()) out.push_back(m - e.back() + e.front());
    return out;
  }

  /// Multiplication by the generator of C_m.
  CmFace rotate() const {
    const std::uint64_t full = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
    const std::uint64_t top = members >> (m - 1) & 1;
    return {m, ((members << 1) & full) | top};
  }

  friend bool operator==(const CmFace&, const CmFace&) = default;
  friend auto operator<=>(const CmFace&, const CmFace&) = default;
};

inline CmFace face_from_exponents(Int m, const std::vector<Int>& exps) {
  std::uint64_t mask = 0;
  for (Int k : exps) {
    if (k < 0 || k >= m) throw PreconditionViolation("face_from_exponents: exponent out of range");
    mask |= std::uint64_t{1} << k;
  }
  if (mask == 0) throw PreconditionViolation("face_from_exponents: empty face");
  return {m, mask};
}

/// Membership test for Sigma(a,b,m) without enumerating it.
class SigmaOracle {
 public:
  SigmaOracle(const Params& p, Int m) : m_(m), member_(p, m) {
    if (m < 1) throw PreconditionViolation("Sigma: m must be positive");
    if (m > kMaxFaceModulus) throw ResourceBound("Sigma: m too large for face masks");
  }

  Int modulus() const { return m_; }

  bool contains(std::uint64_t mask) const {
    if (mask == 0) return false;
    int first = std::countr_zero(mask), prev = first;
    for (std::uint64_t rest = mask & (mask - 1); rest; rest &= rest - 1) {
      const int k = std::countr_zero(rest);
      if (!member_(k - prev)) return false;
      prev = k;
    }
    return member_(m_ - prev + first);
  }

  bool contains(const CmFace& f) const { return f.m == m_ && contains(f.members); }

 private:
  Int m_;
  MembershipTable member_;
};

/// A rotation-invariant simplicial complex on C_m; faces sorted by
/// dimension, then by mask.
struct CmComplex {
  Int m = 0;
  std::vector<CmFace> faces;

  bool empty() const { return faces.empty(); }
  std::size_t size() const { return faces.size(); }

  bool contains(const CmFace& f) const { return std::binary_search(faces.begin(), faces.end(), f, order); }

  std::vector<CmFace> faces_of_dimension(int q) const {
    std::vector<CmFace> out;
    for (const auto& f : faces)
      if (f.dimension() == q) out.push_back(f);
    return out;
  }

  static bool order(const CmFace& x, const CmFace& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x.members < y.members;
  }
};

/// Sigma(a,b,m): the faces all of whose cyclic gaps lie in <a, b>. With
/// max_dim set, only faces up to that dimension are listed.
inline CmComplex build_sigma(const Params& p, Int m, int max_dim = -1) {
  SigmaOracle sigma(p, m);
  CmComplex out{m, {}};
  const int cap = max_dim < 0 ? static_cast<int>(m) : std::min<int>(max_dim + 1, static_cast<int>(m));
  if (max_dim < 0 && m > 30) throw ResourceBound("build_sigma: full enumeration needs m <= 30");
  // subsets of size k in lexicographic mask order (Gosper's hack)
  for (int k = 1; k <= cap; ++k) {
    std::uint64_t mask = (std::uint64_t{1} << k) - 1;
    const std::uint64_t limit = std::uint64_t{1} << m;
    while (mask < limit) {
      if (sigma.contains(mask)) out.faces.push_back({m, mask});
      const std::uint64_t c = mask & (~mask + 1), r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
  }
  std::sort(out.faces.begin(), out.faces.end(), CmComplex::order);
  return out;
}

namespace detail {

/// Boundary coefficients of a face of Delta^{m-1}: (-1)^k on the k-th vertex.
template <typename F>
void for_each_facet(std::uint64_t mask, F&& f) {
  int k = 0;
  for (std::uint64_t rest = mask; rest; rest &= rest - 1, ++k) {
    const std::uint64_t bit = rest & (~rest + 1);
    f(mask ^ bit, k % 2 == 0 ? 1 : -1);
  }
}

/// Chain complex spanned by a list of faces of Delta^{m-1}, closed under
/// the boundary up to faces absent from the list (which are dropped).
struct FaceComplex {
  std::vector<std::vector<std::uint64_t>> cells;  // by dimension
  std::vector<std::unordered_map<std::uint64_t, std::size_t>> index;
  ChainComplex complex;

  std::optional<std::size_t> find(std::uint64_t mask) const {
    const auto q = static_cast<std::size_t>(std::popcount(mask) - 1);
    if (mask == 0 || q >= index.size()) return std::nullopt;
    auto it = index[q].find(mask);
    if (it == index[q].end()) return std::nullopt;
    return it->second;
  }

  SparseVec boundary_of(std::uint64_t mask) const {
    SparseVec v;
    for_each_facet(mask, [&](std::uint64_t g, int sign) {
      if (auto pos = find(g)) axpy(v, BigInt(sign), SparseVec{{*pos, BigInt(1)}});
    });
    return v;
  }
};

inline FaceComplex face_complex(std::vector<std::vector<std::uint64_t>> cells) {
  FaceComplex fc;
  fc.cells = std::move(cells);
  while (!fc.cells.empty() && fc.cells.back().empty()) fc.cells.pop_back();
  fc.index.resize(fc.cells.size());
  std::vector<std::size_t> dims;
  for (std::size_t q = 0; q < fc.cells.size(); ++q) {
    for (std::size_t k = 0; k < fc.cells[q].size(); ++k) fc.index[q].emplace(fc.cells[q][k], k);
    dims.push_back(fc.cells[q].size());
  }
  std::map<int, SparseIntMatrix> bd;
  for (std::size_t q = 1; q < fc.cells.size(); ++q) {
    SparseIntMatrix d(dims[q - 1], dims[q]);
    for (std::size_t col = 0; col < fc.cells[q].size(); ++col)
      for_each_facet(fc.cells[q][col], [&](std::uint64_t g, int sign) {
        auto it = fc.index[q - 1].find(g);
        if (it != fc.index[q - 1].end()) d.add(it->second, col, sign);
      });
    bd.emplace(static_cast<int>(q), std::move(d));
  }
  if (dims.empty()) dims.push_back(0);
  fc.complex = ChainComplex(0, std::move(dims), std::move(bd));
  return fc;
}

}  // namespace detail

/// Relative cellular chains of (Delta^{m-1}, Sigma(a,b,m)): faces of the
/// simplex not in Sigma, in degree = dimension.
inline ChainComplex x_chain_complex(const Params& p, Int m, std::size_t budget = kDefaultCellBudget) {
  SigmaOracle sigma(p, m);
  if (m >= 63 || (std::uint64_t{1} << m) - 1 > budget)
    throw ResourceBound("x_homology: 2^" + std::to_string(m) + " - 1 cells exceed the budget");
  std::vector<std::vector<std::uint64_t>> cells(static_cast<std::size_t>(m));
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask)
    if (!sigma.contains(mask)) cells[static_cast<std::size_t>(std::popcount(mask) - 1)].push_back(mask);
  auto fc = detail::face_complex(std::move(cells));
  return fc.complex;
}

/// Reduced homology of X(a,b,m); the basepoint is the image of Sigma (a
/// disjoint point when Sigma is empty).
inline HomologySummary x_homology(const Params& p, Int m, std::size_t budget = kDefaultCellBudget) {
  return homology(x_chain_complex(p, m, budget));
}

/// Reduced homology of Y(a,b,m) = C_a~ ^ S^lambda ^ C_b~ with the factors
/// present according to divisibility.
inline HomologySummary expected_y_homology(const Params& p, Int m) {
  if (m < 1) throw PreconditionViolation("expected_y_homology: m must be positive");
  const Int l = ell(p, m);
  const bool da = m % p.a() == 0, db = m % p.b() == 0;
  int q = static_cast<int>(2 * l);
  Int rank = 1;
  if (da) {
    rank *= p.a() - 1;
    ++q;
  }
  if (db) {
    rank *= p.b() - 1;
    ++q;
  }
  HomologySummary s;
  s.groups[q].group = AbelianGroup{static_cast<std::size_t>(rank), {}};
  return s;
}

struct ConjectureBReport {
  Int a = 0, b = 0, m = 0;
  HomologySummary x, y;
  HomologySummary tx, ty;
  bool space_level_agree = false;  // evidence only
  bool t_level_agree = false;      // required
};

/// Compares H~(X) with H~(Y), and the bar-model homology of T_+ ^_{C_m} X
/// with the expected answer; throws TheoremViolation if the latter differ.
inline ConjectureBReport conjecture_b_homology_check(const Params& p, Int m,
                                                     std::size_t budget = kDefaultCellBudget) {
  ConjectureBReport r;
  r.a = p.a();
  r.b = p.b();
  r.m = m;
  r.x = x_homology(p, m, budget);
  r.y = expected_y_homology(p, m);
  r.space_level_agree = r.x.same_groups(r.y);
  r.tx = homology(relative_bar_complex(p, m));
  r.ty = expected_ty_homology(p, m);
  r.t_level_agree = r.tx.same_groups(r.ty);
  if (!r.t_level_agree)
    throw TheoremViolation("conjecture_b_homology_check: bar model " + r.tx.to_string() + " differs from " +
                           r.ty.to_string() + " at m=" + std::to_string(m));
  return r;
}

/// The face G^{1/s} = { k in [0, m) : k mod t in G } of C_m, t = m/s.
inline CmFace fixed_point_face(const CmFace& g, Int s) {
  const Int t = g.m, m = checked_mul(g.m, s);
  if (m > kMaxFaceModulus) throw ResourceBound("fixed_point_face: modulus too large");
  std::uint64_t mask = 0;
  for (Int k = 0; k < m; ++k)
    if (g.members >> (k % t) & 1) mask |= std::uint64_t{1} << k;
  return {m, mask};
}

/// G -> G^{1/s} is a bijection from Sigma(a,b,m/s) onto the C_s-invariant
/// faces of Sigma(a,b,m), and gaps(G^{1/s}) is gaps(G) repeated s times.
inline bool fixed_point_check(const Params& p, Int m, Int s) {
  if (s < 1 || m < 1 || m % s != 0) throw PreconditionViolation("fixed_point_check: need s | m");
  const Int t = m / s;
  if (t > 24) throw ResourceBound("fixed_point_check: 2^(m/s) subsets exceed the budget");
  SigmaOracle big(p, m), small(p, t);
  // every C_s-invariant subset of C_m is G^{1/s} for exactly one G in 2^{C_t}
  for (std::uint64_t g = 1; g < (std::uint64_t{1} << t); ++g) {
    const CmFace face{t, g};
    const CmFace lifted = fixed_point_face(face, s);
    std::vector<Int> repeated;
    for (Int k = 0; k < s; ++k) {
      auto gp = face.gaps();
      repeated.insert(repeated.end(), gp.begin(), gp.end());
    }
    if (lifted.gaps() != repeated) return false;
    if (small.contains(g) != big.contains(lifted.members)) return false;
  }
  return true;
}

/// The cycle z' of X(a,b,m) as signed 2-faces, with its checks.
struct GeneratorCycle {
  Int l = 0, m_prime = 0;
  std::vector<std::pair<CmFace, int>> terms;
  bool is_cycle = false;    // every edge of the simplicial boundary lies in Sigma
  bool generates = false;   // that boundary generates H_1(Sigma) = H~_2(X)
};

/// Requires ell(a,b,m) = 1 and neither a nor b dividing m. Works from the
/// 2-skeleton of Sigma, using H~_2(X) = H_1(Sigma).
inline GeneratorCycle generator_cycle(const Params& p, Int m) {
  if (m < 1 || ell(p, m) != 1 || m % p.a() == 0 || m % p.b() == 0)
    throw PreconditionViolation("generator_cycle: need ell(a,b,m) = 1 and a, b not dividing m");
  const SigmaOracle sigma(p, m);
  const WeightData wd = weights(p, m);
  const WeightInfo& w = wd.at(wd.open_weights.at(0));
  GeneratorCycle out;
  out.l = w.l;
  out.m_prime = w.m1;
  const Int mp = w.m1, l = mod_floor(w.l, w.m1);
  for (Int u = 1; u < mp; ++u)
    for (Int v = u + 1; v < mp; ++v) {
      const Int diff = mod_floor(v - u, mp);
      int sign = 0;
      if (diff == l) sign = 1;
      else if (diff == mod_floor(-l, mp)) sign = -1;
      if (sign != 0) out.terms.emplace_back(face_from_exponents(m, {0, u, v}), sign);
    }

  // simplicial boundary in Delta^{m-1}
  std::map<std::uint64_t, BigInt> edges;
  for (const auto& [face, sign] : out.terms)
    detail::for_each_facet(face.members, [&](std::uint64_t g, int e) { edges[g] += sign * e; });
  out.is_cycle = true;
  for (const auto& [g, c] : edges)
    if (c != 0 && !sigma.contains(g)) out.is_cycle = false;
  if (!out.is_cycle) return out;

  const CmComplex skel = build_sigma(p, m, 2);
  std::vector<std::vector<std::uint64_t>> cells(3);
  for (const auto& f : skel.faces) cells[static_cast<std::size_t>(f.dimension())].push_back(f.members);
  const auto fc = detail::face_complex(std::move(cells));
  const HomologyComputer hc(fc.complex);
  if (!(hc.summary().at(1) == AbelianGroup{1, {}})) return out;
  SparseVec cyc;
  for (const auto& [g, c] : edges)
    if (c != 0) cyc.emplace(*fc.find(g), c);
  const HomologyClass cls = hc.classify(1, cyc);
  out.generates = cls.torsion.empty() && cls.free.size() == 1 && abs(cls.free[0]) == 1;
  return out;
}

}  // namespace cuspk

#endif
