// Chain models of the weight-m part of the relative cyclic bar construction
// of (<t>, <t^a, t^b>): the normalized relative bar complex with Connes'
// operator, the small complexes R(A;m), R(B;m) with the map f_R between
// them, and the cellular model of T_+ ^_{C_m} Y(a,b,m).

#ifndef CUSPK_CYCLICBAR_HPP
#define CUSPK_CYCLICBAR_HPP

#include "cuspk/homlinalg.hpp"
#include "cuspk/semigroup.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace cuspk {

/// Exponents (m_0, ..., m_q) of a q-simplex (t^{m_0}, ..., t^{m_q}).
using BarTuple = std::vector<Int>;

inline std::string to_string(const BarTuple& t) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ")";
  return os.str();
}

/// Normalized relative bar complex in weight m: tuples with m_0 >= 0 and
/// m_i >= 1 for i >= 1, modulo those with every entry in <a, b>.
class BarModel {
 public:
  BarModel(const Params& p, Int m) : params_(p), m_(m), member_(p, m) {
    if (m < 1) throw PreconditionViolation("relative_bar_complex: m must be positive");
    if (m > 24) throw ResourceBound("relative_bar_complex: weight too large for 2^m enumeration");
    basis_.resize(static_cast<std::size_t>(m) + 1);
    index_.resize(basis_.size());
    BarTuple t;
    for (Int m0 = 0; m0 <= m; ++m0) {
      t.assign(1, m0);
      enumerate(t, m - m0);
    }
    std::vector<std::size_t> dims;
    std::vector<std::vector<std::string>> labels;
    for (const auto& deg : basis_) {
      dims.push_back(deg.size());
      std::vector<std::string> l;
      for (const auto& x : deg) l.push_back(to_string(x));
      labels.push_back(std::move(l));
    }
    std::map<int, SparseIntMatrix> bd;
    for (int q = 1; q <= static_cast<int>(m); ++q) bd.emplace(q, face_boundary(q));
    complex_ = ChainComplex(0, std::move(dims), std::move(bd), std::move(labels));
  }

  const Params& params() const { return params_; }
  Int weight() const { return m_; }
  const ChainComplex& complex() const { return complex_; }
  const std::vector<BarTuple>& basis(int q) const { return basis_.at(static_cast<std::size_t>(q)); }

  bool in_subcomplex(const BarTuple& t) const {
    return std::all_of(t.begin(), t.end(), [&](Int x) { return member_(x); });
  }

  std::optional<std::size_t> find(const BarTuple& t) const {
    if (t.empty() || t.size() > index_.size()) return std::nullopt;
    const auto& idx = index_[t.size() - 1];
    auto it = idx.find(t);
    if (it == idx.end()) return std::nullopt;
    return it->second;
  }

  /// Connes' operator C_q -> C_{q+1}:
  /// d(x_0..x_q) = sum_i (-1)^{qi} (0, x_i, .., x_q, x_0, .., x_{i-1}).
  SparseIntMatrix connes(int q) const {
    const std::size_t rows = complex_.dim(q + 1), cols = complex_.dim(q);
    SparseIntMatrix d(rows, cols);
    if (cols == 0) return d;
    const auto& src = basis(q);
    for (std::size_t col = 0; col < src.size(); ++col) {
      const BarTuple& x = src[col];
      const auto n = x.size();
      for (std::size_t i = 0; i < n; ++i) {
        BarTuple y{0};
        for (std::size_t k = 0; k < n; ++k) y.push_back(x[(i + k) % n]);
        if (auto row = find(y)) d.add(*row, col, ((q * static_cast<int>(i)) % 2 == 0) ? 1 : -1);
      }
    }
    return d;
  }

 private:
  void enumerate(BarTuple& t, Int rest) {
    if (rest == 0) {
      if (in_subcomplex(t)) return;
      auto& deg = basis_[t.size() - 1];
      index_[t.size() - 1].emplace(t, deg.size());
      deg.push_back(t);
      return;
    }
    for (Int x = 1; x <= rest; ++x) {
      t.push_back(x);
      enumerate(t, rest - x);
      t.pop_back();
    }
  }

  SparseIntMatrix face_boundary(int q) const {
    SparseIntMatrix d(complex_dims(q - 1), complex_dims(q));
    const auto& src = basis(q);
    for (std::size_t col = 0; col < src.size(); ++col) {
      const BarTuple& x = src[col];
      for (int i = 0; i <= q; ++i) {
        BarTuple y;
        if (i < q) {
          y.assign(x.begin(), x.begin() + i);
          y.push_back(x[static_cast<std::size_t>(i)] + x[static_cast<std::size_t>(i) + 1]);
          y.insert(y.end(), x.begin() + i + 2, x.end());
        } else {
          y.assign(x.begin(), x.end() - 1);
          y[0] += x.back();
        }
        if (auto row = find(y)) d.add(*row, col, i % 2 == 0 ? 1 : -1);
      }
    }
    return d;
  }

  std::size_t complex_dims(int q) const { return basis_.at(static_cast<std::size_t>(q)).size(); }

  Params params_;
  Int m_;
  MembershipTable member_;
  std::vector<std::vector<BarTuple>> basis_;
  std::vector<std::map<BarTuple, std::size_t>> index_;
  ChainComplex complex_;
};

inline ChainComplex relative_bar_complex(const Params& p, Int m) { return BarModel(p, m).complex(); }

inline SparseIntMatrix connes_on_bar(const Params& p, Int m, int q) {
  BarModel bar(p, m);
  if (q < 0 || q >= static_cast<int>(m)) throw PreconditionViolation("connes_on_bar: degree out of range");
  return bar.connes(q);
}

/// x^i y^j (dx)^{ex} (dy)^{ey} z^[r] with 0 <= i < b.
struct SmallBasisElement {
  enum Kind { One = 0, Dx = 1, Dy = 2, DxDy = 3 };
  Kind kind = One;
  Int i = 0;
  Int j = 0;
  Int r = 0;

  bool has_dx() const { return kind == Dx || kind == DxDy; }
  bool has_dy() const { return kind == Dy || kind == DxDy; }
  int degree() const { return static_cast<int>(has_dx()) + static_cast<int>(has_dy()) + 2 * static_cast<int>(r); }

  std::string label() const {
    std::ostringstream os;
    os << "x^" << i << "y^" << j;
    if (has_dx()) os << "dx";
    if (has_dy()) os << "dy";
    if (r > 0) os << "z[" << r << "]";
    return os.str();
  }

  friend auto operator<=>(const SmallBasisElement&, const SmallBasisElement&) = default;
};

/// The weight-m piece of R(A), A = Z[x,y]/(x^b - y^a), with differential
/// delta and the operator d_R.
class SmallModelA {
 public:
  SmallModelA(const Params& p, Int m) : params_(p), m_(m) {
    if (m < 1) throw PreconditionViolation("small_complex_A: m must be positive");
    const Int a = p.a(), b = p.b();
    for (Int r = 0; r * p.ab() <= m; ++r)
      for (int kind = 0; kind < 4; ++kind) {
        SmallBasisElement e{static_cast<SmallBasisElement::Kind>(kind), 0, 0, r};
        const Int rest = m - p.ab() * r - (e.has_dx() ? a : 0) - (e.has_dy() ? b : 0);
        for (Int i = 0; i < b && a * i <= rest; ++i)
          if ((rest - a * i) % b == 0) {
            e.i = i;
            e.j = (rest - a * i) / b;
            insert(e);
          }
      }
    const int top = basis_.empty() ? 0 : static_cast<int>(basis_.size()) - 1;
    std::vector<std::size_t> dims;
    std::vector<std::vector<std::string>> labels;
    for (int q = 0; q <= top; ++q) {
      dims.push_back(dim(q));
      std::vector<std::string> l;
      for (const auto& e : basis(q)) l.push_back(e.label());
      labels.push_back(std::move(l));
    }
    std::map<int, SparseIntMatrix> bd;
    for (int q = 1; q <= top; ++q) bd.emplace(q, delta(q));
    complex_ = ChainComplex(0, std::move(dims), std::move(bd), std::move(labels));
  }

  const Params& params() const { return params_; }
  Int weight() const { return m_; }
  const ChainComplex& complex() const { return complex_; }

  std::size_t dim(int q) const {
    return q >= 0 && static_cast<std::size_t>(q) < basis_.size() ? basis_[static_cast<std::size_t>(q)].size() : 0;
  }
  const std::vector<SmallBasisElement>& basis(int q) const {
    static const std::vector<SmallBasisElement> none;
    return q >= 0 && static_cast<std::size_t>(q) < basis_.size() ? basis_[static_cast<std::size_t>(q)] : none;
  }

  std::optional<std::size_t> find(const SmallBasisElement& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Coordinates of a monomial after rewriting x^b = y^a.
  SparseVec monomial(SmallBasisElement e) const {
    while (e.i >= params_.b()) {
      e.i -= params_.b();
      e.j += params_.a();
    }
    auto pos = find(e);
    if (!pos) throw std::logic_error("SmallModelA: monomial " + e.label() + " outside the weight-m basis");
    return SparseVec{{*pos, BigInt(1)}};
  }

  /// d_R : degree q -> degree q + 1.
  SparseIntMatrix d_R(int q) const {
    SparseIntMatrix d(dim(q + 1), dim(q));
    const auto& src = basis(q);
    for (std::size_t col = 0; col < src.size(); ++col) {
      const auto& e = src[col];
      if (e.kind == SmallBasisElement::DxDy) continue;
      const Int coeff_x = e.i + params_.b() * e.r;  // on x^{i-1} y^j dx
      const Int coeff_y = e.j;                      // on x^i y^{j-1} dy
      using K = SmallBasisElement;
      if (e.i >= 1 && e.kind != K::Dx) {
        // (x^{i-1} y^j dx z^[r]) * (dy)^{ey}
        K t{e.kind == K::Dy ? K::DxDy : K::Dx, e.i - 1, e.j, e.r};
        axpy_col(d, col, coeff_x, monomial(t));
      }
      if (e.j >= 1 && e.kind != K::Dy) {
        // (x^i y^{j-1} dy z^[r]) * (dx)^{ex}; dy dx = -dx dy
        K t{e.kind == K::Dx ? K::DxDy : K::Dy, e.i, e.j - 1, e.r};
        axpy_col(d, col, e.kind == K::Dx ? -coeff_y : coeff_y, monomial(t));
      }
    }
    return d;
  }

 private:
  void insert(const SmallBasisElement& e) {
    const auto q = static_cast<std::size_t>(e.degree());
    if (basis_.size() <= q) basis_.resize(q + 1);
    index_.emplace(e, basis_[q].size());
    basis_[q].push_back(e);
  }

  static void axpy_col(SparseIntMatrix& d, std::size_t col, Int k, const SparseVec& v) {
    if (k == 0) return;
    for (const auto& [row, x] : v) d.add(row, col, BigInt(k) * x);
  }

  /// delta : degree q -> degree q - 1, a derivation with delta(dx) = delta(dy) = 0
  /// and delta(z^[r]) = z^[r-1] (b x^{b-1} dx - a y^{a-1} dy).
  SparseIntMatrix delta(int q) const {
    SparseIntMatrix d(dim(q - 1), dim(q));
    const Int a = params_.a(), b = params_.b();
    using K = SmallBasisElement;
    const auto& src = basis(q);
    for (std::size_t col = 0; col < src.size(); ++col) {
      const auto& e = src[col];
      if (e.r == 0) continue;
      switch (e.kind) {
        case K::One:
          axpy_col(d, col, b, monomial({K::Dx, e.i + b - 1, e.j, e.r - 1}));
          axpy_col(d, col, -a, monomial({K::Dy, e.i, e.j + a - 1, e.r - 1}));
          break;
        case K::Dx:
          axpy_col(d, col, a, monomial({K::DxDy, e.i, e.j + a - 1, e.r - 1}));
          break;
        case K::Dy:
          axpy_col(d, col, b, monomial({K::DxDy, e.i + b - 1, e.j, e.r - 1}));
          break;
        case K::DxDy:
          break;
      }
    }
    return d;
  }

  Params params_;
  Int m_;
  std::vector<std::vector<SmallBasisElement>> basis_;
  std::map<SmallBasisElement, std::size_t> index_;
  ChainComplex complex_;
};

inline ChainComplex small_complex_A(const Params& p, Int m) { return SmallModelA(p, m).complex(); }

/// The weight-m piece of R(B), B = Z[t]: t^m in degree 0 and t^{m-1} dt in
/// degree 1, zero differential.
inline ChainComplex small_complex_B(const Params&, Int m) {
  if (m < 1) throw PreconditionViolation("small_complex_B: m must be positive");
  return ChainComplex(0, {1, 1}, {},
                      {{"t^" + std::to_string(m)}, {"t^" + std::to_string(m - 1) + "dt"}});
}

inline SparseIntMatrix d_R_matrix(const Params& p, Int m, int q) { return SmallModelA(p, m).d_R(q); }

/// d_R on R(B;m): t^m -> m t^{m-1} dt.
inline SparseIntMatrix d_R_matrix_B(Int m, int q) {
  SparseIntMatrix d(q == 0 ? 1 : 0, q == 0 ? 1 : (q == 1 ? 1 : 0));
  if (q == 0) d.add(0, 0, m);
  return d;
}

/// f_R : R(A;m) -> R(B;m). Monomials go to t^m, x^i y^j dx to a t^{m-1} dt,
/// x^i y^j dy to b t^{m-1} dt, everything with z or dx dy to zero.
inline ChainMap f_R_map(const SmallModelA& A) {
  ChainMap f;
  SparseIntMatrix f0(1, A.dim(0)), f1(1, A.dim(1));
  for (std::size_t k = 0; k < A.dim(0); ++k) f0.add(0, k, 1);
  for (std::size_t k = 0; k < A.dim(1); ++k) {
    const auto& e = A.basis(1)[k];
    f1.add(0, k, e.kind == SmallBasisElement::Dx ? A.params().a() : A.params().b());
  }
  f.components.emplace(0, std::move(f0));
  f.components.emplace(1, std::move(f1));
  return f;
}

inline ChainMap f_R_map(const Params& p, Int m) { return f_R_map(SmallModelA(p, m)); }

inline ChainComplex f_R_cone(const Params& p, Int m) {
  SmallModelA A(p, m);
  return mapping_cone(A.complex(), small_complex_B(p, m), f_R_map(A));
}

/// Operator on cone(f_R) chains of degree q: (x, y) -> (-d_R x, d_R y).
inline SparseIntMatrix connes_on_cone(const SmallModelA& A, int q) {
  const std::size_t a_in = A.dim(q - 1), b_in = q >= 0 && q <= 1 ? 1 : 0;
  const std::size_t a_out = A.dim(q), b_out = q + 1 <= 1 && q + 1 >= 0 ? 1 : 0;
  SparseIntMatrix d(a_out + b_out, a_in + b_in);
  if (q >= 1)
    for (const auto& e : A.d_R(q - 1).entries()) d.add(e.row, e.col, -e.value);
  if (q == 0) d.add(a_out, a_in, A.weight());
  return d;
}

namespace detail {

inline HomologySummary summary_of(std::map<int, AbelianGroup> groups) {
  HomologySummary s;
  for (auto& [q, g] : groups)
    if (!g.trivial()) s.groups[q].group = std::move(g);
  return s;
}

/// Cells of (T/C_s)_+ ^ S^lambda in degrees 2l, 2l+1 (zero differential),
/// or the zero complex when the corner is absent.
inline ChainComplex ty_corner(Int l, bool present) {
  const std::size_t n = present ? 1 : 0;
  return ChainComplex(static_cast<int>(2 * l), {n, n}, {});
}

/// Projection T/C_s -> T/C_{s'}: identity on the 0-cell, degree s'/s on the 1-cell.
inline ChainMap ty_projection(const ChainComplex& from, const ChainComplex& to, Int l, Int degree) {
  ChainMap f;
  const int q = static_cast<int>(2 * l);
  SparseIntMatrix f0(to.dim(q), from.dim(q)), f1(to.dim(q + 1), from.dim(q + 1));
  if (from.dim(q) && to.dim(q)) {
    f0.add(0, 0, 1);
    f1.add(0, 0, degree);
  }
  f.components.emplace(q, std::move(f0));
  f.components.emplace(q + 1, std::move(f1));
  return f;
}

/// Map of cones induced by a commuting square (h_A on sources, h_B on targets).
inline ChainMap cone_map(const ChainComplex& a_src, const ChainComplex& b_src, const ChainComplex& a_tgt,
                         const ChainComplex& b_tgt, const ChainMap& h_a, const ChainMap& h_b, int lo, int hi) {
  ChainMap out;
  for (int q = lo; q <= hi; ++q) {
    SparseIntMatrix ha = h_a.component(a_src, a_tgt, q - 1);
    SparseIntMatrix hb = h_b.component(b_src, b_tgt, q);
    SparseIntMatrix m(a_tgt.dim(q - 1) + b_tgt.dim(q), a_src.dim(q - 1) + b_src.dim(q));
    for (const auto& e : ha.entries()) m.add(e.row, e.col, e.value);
    for (const auto& e : hb.entries()) m.add(a_tgt.dim(q - 1) + e.row, a_src.dim(q - 1) + e.col, e.value);
    out.components.emplace(q, std::move(m));
  }
  return out;
}

}  // namespace detail

/// Closed form for the homology of T_+ ^_{C_m} Y(a,b,m).
inline HomologySummary closed_form_ty_homology(const Params& p, Int m) {
  if (m < 1) throw PreconditionViolation("expected_ty_homology: m must be positive");
  const Int l = ell(p, m);
  const bool da = m % p.a() == 0, db = m % p.b() == 0;
  const int q = static_cast<int>(2 * l);
  std::map<int, AbelianGroup> g;
  if (!da && !db) {
    g[q] = AbelianGroup{1, {}};
    g[q + 1] = AbelianGroup{1, {}};
  } else if (da && !db) {
    g[q + 1] = AbelianGroup{0, {BigInt(p.a())}};
  } else if (db && !da) {
    g[q + 1] = AbelianGroup{0, {BigInt(p.b())}};
  }
  return detail::summary_of(std::move(g));
}

/// Total cofiber of the square of projections
///   T/C_{m/ab} -> T/C_{m/a}
///       |            |
///   T/C_{m/b}  -> T/C_m
/// each smashed with S^lambda; corners whose index does not divide m are absent.
inline ChainComplex ty_model_complex(const Params& p, Int m) {
  if (m < 1) throw PreconditionViolation("ty_model_complex: m must be positive");
  const Int a = p.a(), b = p.b(), l = ell(p, m);
  const bool da = m % a == 0, db = m % b == 0;
  const ChainComplex x00 = detail::ty_corner(l, da && db), x01 = detail::ty_corner(l, da);
  const ChainComplex x10 = detail::ty_corner(l, db), x11 = detail::ty_corner(l, true);
  // vertical maps have degree a, horizontal ones degree b
  const ChainComplex left = mapping_cone(x00, x10, detail::ty_projection(x00, x10, l, a));
  const ChainComplex right = mapping_cone(x01, x11, detail::ty_projection(x01, x11, l, a));
  const ChainMap h = detail::cone_map(x00, x10, x01, x11, detail::ty_projection(x00, x01, l, b),
                                      detail::ty_projection(x10, x11, l, b), left.min_degree(), left.max_degree());
  return mapping_cone(left, right, h);
}

/// Closed form, checked against the cellular model; throws TheoremViolation
/// if the two disagree.
inline HomologySummary expected_ty_homology(const Params& p, Int m) {
  HomologySummary closed = closed_form_ty_homology(p, m);
  if (!homology(ty_model_complex(p, m)).same_groups(closed))
    throw TheoremViolation("expected_ty_homology: cellular model disagrees with the closed form");
  return closed;
}

/// Result of comparing the three models in one weight.
struct WeightReport {
  Int a = 0, b = 0, m = 0;
  HomologySummary bar, cone, expected;
  std::optional<BigInt> connes_bar;   // only when neither a nor b divides m
  std::optional<BigInt> connes_cone;
  bool pipelines_agree = false;
};

namespace detail {

/// Coordinate of the image of the free generator of H_q under `op`, in
/// H_{q+1}; nullopt unless both groups are Z.
inline std::optional<BigInt> rank_one_factor(const HomologyComputer& hc, int q, const SparseIntMatrix& op) {
  const auto& s = hc.summary();
  if (!(s.at(q) == AbelianGroup{1, {}}) || !(s.at(q + 1) == AbelianGroup{1, {}})) return std::nullopt;
  const SparseVec img = op.apply(s.groups.at(q).free_generators.at(0));
  if (!hc.complex().boundary(q + 1).apply(img).empty())
    throw TheoremViolation("Connes operator does not send a cycle to a cycle");
  return hc.classify(q + 1, img).free.at(0);
}

}  // namespace detail

inline WeightReport analyze_weight(const Params& p, Int m) {
  WeightReport r;
  r.a = p.a();
  r.b = p.b();
  r.m = m;
  const BarModel bar(p, m);
  const HomologyComputer bar_h(bar.complex());
  r.bar = bar_h.summary();
  const SmallModelA A(p, m);
  const ChainComplex cone = mapping_cone(A.complex(), small_complex_B(p, m), f_R_map(A));
  const HomologyComputer cone_h(cone);
  r.cone = cone_h.summary();
  r.expected = expected_ty_homology(p, m);
  if (m % p.a() != 0 && m % p.b() != 0) {
    const int q = static_cast<int>(2 * ell(p, m));
    r.connes_bar = detail::rank_one_factor(bar_h, q, bar.connes(q));
    r.connes_cone = detail::rank_one_factor(cone_h, q, connes_on_cone(A, q));
  }
  r.pipelines_agree = r.bar.same_groups(r.expected) && r.cone.same_groups(r.expected);
  if (r.connes_bar) r.pipelines_agree = r.pipelines_agree && abs(*r.connes_bar) == m;
  if (r.connes_cone) r.pipelines_agree = r.pipelines_agree && abs(*r.connes_cone) == m;
  return r;
}

}  // namespace cuspk

#endif
