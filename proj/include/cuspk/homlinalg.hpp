// Exact integer linear algebra: sparse and dense matrices over Z, Smith
// normal form with transforms, homology of chain complexes with generator
// lifts, mapping cones, and an exact rational LP for convex-hull membership.

#ifndef CUSPK_HOMLINALG_HPP
#define CUSPK_HOMLINALG_HPP

#include "cuspk/common.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace cuspk {

class ComplexInvalid : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NotAChainMap : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sparse integer vector keyed by basis index; never stores zeros.
using SparseVec = std::map<std::size_t, BigInt>;

inline void axpy(SparseVec& y, const BigInt& k, const SparseVec& x) {
  if (k == 0) return;
  for (const auto& [i, v] : x) {
    auto [it, inserted] = y.try_emplace(i, BigInt(k * v));
    if (!inserted) {
      it->second += k * v;
      if (it->second == 0) y.erase(it);
    }
  }
}

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix id(n, n);
    for (std::size_t i = 0; i < n; ++i) id(i, i) = 1;
    return id;
  }

  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    IntMatrix out(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != out.cols_) throw DimensionMismatch("IntMatrix: ragged rows");
      for (std::size_t j = 0; j < out.cols_; ++j) out(i, j) = rows[i][j];
    }
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("IntMatrix: product shape mismatch");
    IntMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const BigInt& v = (*this)(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          if (o(k, j) != 0) out(i, j) += v * o(k, j);
      }
    return out;
  }

  std::vector<BigInt> operator*(const std::vector<BigInt>& x) const {
    if (x.size() != cols_) throw DimensionMismatch("IntMatrix: vector length mismatch");
    std::vector<BigInt> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0 && x[j] != 0) out[i] += (*this)(i, j) * x[j];
    return out;
  }

  /// Columns [first, first + count).
  IntMatrix column_block(std::size_t first, std::size_t count) const {
    IntMatrix out(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
    return out;
  }

  std::vector<BigInt> column(std::size_t j) const {
    std::vector<BigInt> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const BigInt& v) { return v == 0; });
  }

  /// Fraction-free (Bareiss) determinant.
  BigInt determinant() const {
    if (rows_ != cols_) throw DimensionMismatch("determinant: matrix not square");
    const std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix a = *this;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (a(k, k) == 0) {
        std::size_t p = k + 1;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) return 0;
        for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Column-major sparse integer matrix.
class SparseIntMatrix {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    BigInt value;
  };

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  /// Duplicate coordinates are summed; zeros are dropped.
  static SparseIntMatrix from_entries(std::size_t rows, std::size_t cols, const std::vector<Entry>& entries) {
    SparseIntMatrix m(rows, cols);
    for (const auto& e : entries) m.add(e.row, e.col, e.value);
    return m;
  }

  static SparseIntMatrix from_dense(const IntMatrix& d) {
    SparseIntMatrix m(d.rows(), d.cols());
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j)
        if (d(i, j) != 0) m.columns_[j].emplace(i, d(i, j));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }

  void add(std::size_t row, std::size_t col, const BigInt& v) {
    if (row >= rows_ || col >= columns_.size()) throw DimensionMismatch("SparseIntMatrix: index out of range");
    if (v == 0) return;
    auto& c = columns_[col];
    auto [it, inserted] = c.try_emplace(row, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) c.erase(it);
    }
  }

  BigInt get(std::size_t row, std::size_t col) const {
    const auto& c = columns_.at(col);
    auto it = c.find(row);
    return it == c.end() ? BigInt(0) : it->second;
  }

  const SparseVec& column(std::size_t col) const { return columns_.at(col); }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  bool is_zero() const { return nnz() == 0; }

  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    for (std::size_t j = 0; j < columns_.size(); ++j)
      for (const auto& [i, v] : columns_[j]) out.push_back({i, j, v});
    return out;
  }

  SparseVec apply(const SparseVec& x) const {
    SparseVec y;
    for (const auto& [j, v] : x) {
      if (j >= columns_.size()) throw DimensionMismatch("SparseIntMatrix: vector index out of range");
      axpy(y, v, columns_[j]);
    }
    return y;
  }

  SparseIntMatrix operator*(const SparseIntMatrix& o) const {
    if (cols() != o.rows()) throw DimensionMismatch("SparseIntMatrix: product shape mismatch");
    SparseIntMatrix out(rows_, o.cols());
    for (std::size_t j = 0; j < o.cols(); ++j) out.columns_[j] = apply(o.columns_[j]);
    return out;
  }

  SparseIntMatrix operator+(const SparseIntMatrix& o) const {
    if (rows_ != o.rows_ || cols() != o.cols()) throw DimensionMismatch("SparseIntMatrix: sum shape mismatch");
    SparseIntMatrix out = *this;
    for (std::size_t j = 0; j < cols(); ++j) axpy(out.columns_[j], 1, o.columns_[j]);
    return out;
  }

  SparseIntMatrix operator-() const {
    SparseIntMatrix out = *this;
    for (auto& c : out.columns_)
      for (auto& [i, v] : c) v = -v;
    return out;
  }

  IntMatrix to_dense() const {
    IntMatrix d(rows_, cols());
    for (std::size_t j = 0; j < cols(); ++j)
      for (const auto& [i, v] : columns_[j]) d(i, j) = v;
    return d;
  }

  friend bool operator==(const SparseIntMatrix&, const SparseIntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVec> columns_;
};

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... .
struct SmithForm {
  IntMatrix U, D, V;
  IntMatrix U_inv, V_inv;
  std::size_t rank = 0;

  std::vector<BigInt> diagonal() const {
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
    return out;
  }
};

namespace detail {

// Elementary operations on the working matrix, mirrored into the transforms.
class SmithWorker {
 public:
  SmithWorker(IntMatrix m, bool track) : a_(std::move(m)), track_(track) {
    if (track_) {
      u_ = IntMatrix::identity(a_.rows());
      u_inv_ = u_;
      v_ = IntMatrix::identity(a_.cols());
      v_inv_ = v_;
    }
  }

  // row i += k * row j
  void add_row(std::size_t i, std::size_t j, const BigInt& k) {
    for (std::size_t c = 0; c < a_.cols(); ++c)
      if (a_(j, c) != 0) a_(i, c) += k * a_(j, c);
    if (!track_) return;
    for (std::size_t c = 0; c < u_.cols(); ++c)
      if (u_(j, c) != 0) u_(i, c) += k * u_(j, c);
    for (std::size_t r = 0; r < u_inv_.rows(); ++r)
      if (u_inv_(r, i) != 0) u_inv_(r, j) -= k * u_inv_(r, i);
  }

  // col i += k * col j
  void add_col(std::size_t i, std::size_t j, const BigInt& k) {
    for (std::size_t r = 0; r < a_.rows(); ++r)
      if (a_(r, j) != 0) a_(r, i) += k * a_(r, j);
    if (!track_) return;
    for (std::size_t r = 0; r < v_.rows(); ++r)
      if (v_(r, j) != 0) v_(r, i) += k * v_(r, j);
    for (std::size_t c = 0; c < v_inv_.cols(); ++c)
      if (v_inv_(i, c) != 0) v_inv_(j, c) -= k * v_inv_(i, c);
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a_.cols(); ++c) std::swap(a_(i, c), a_(j, c));
    if (!track_) return;
    for (std::size_t c = 0; c < u_.cols(); ++c) std::swap(u_(i, c), u_(j, c));
    for (std::size_t r = 0; r < u_inv_.rows(); ++r) std::swap(u_inv_(r, i), u_inv_(r, j));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a_.rows(); ++r) std::swap(a_(r, i), a_(r, j));
    if (!track_) return;
    for (std::size_t r = 0; r < v_.rows(); ++r) std::swap(v_(r, i), v_(r, j));
    for (std::size_t c = 0; c < v_inv_.cols(); ++c) std::swap(v_inv_(i, c), v_inv_(j, c));
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_(i, c) = -a_(i, c);
    if (!track_) return;
    for (std::size_t c = 0; c < u_.cols(); ++c) u_(i, c) = -u_(i, c);
    for (std::size_t r = 0; r < u_inv_.rows(); ++r) u_inv_(r, i) = -u_inv_(r, i);
  }

  SmithForm run() {
    const std::size_t n = std::min(a_.rows(), a_.cols());
    std::size_t t = 0;
    for (; t < n; ++t) {
      if (!place_min_pivot(t)) break;
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < a_.rows(); ++i) {
          if (a_(i, t) == 0) continue;
          BigInt q = a_(i, t) / a_(t, t);
          if (q != 0) add_row(i, t, -q);
          if (a_(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < a_.cols(); ++j) {
          if (a_(t, j) == 0) continue;
          BigInt q = a_(t, j) / a_(t, t);
          if (q != 0) add_col(j, t, -q);
          if (a_(t, j) != 0) clean = false;
        }
        if (!clean) {
          place_min_pivot_in_cross(t);
          continue;
        }
        // Pivot must divide the rest of the block.
        std::optional<std::size_t> bad_row;
        for (std::size_t i = t + 1; i < a_.rows() && !bad_row; ++i)
          for (std::size_t j = t + 1; j < a_.cols(); ++j)
            if (a_(i, j) % a_(t, t) != 0) {
              bad_row = i;
              break;
            }
        if (!bad_row) break;
        add_row(t, *bad_row, 1);
      }
      if (a_(t, t) < 0) negate_row(t);
    }
    SmithForm out;
    out.rank = t;
    out.D = std::move(a_);
    if (track_) {
      out.U = std::move(u_);
      out.U_inv = std::move(u_inv_);
      out.V = std::move(v_);
      out.V_inv = std::move(v_inv_);
    }
    return out;
  }

 private:
  bool place_min_pivot(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    BigInt best_abs;
    for (std::size_t i = t; i < a_.rows(); ++i)
      for (std::size_t j = t; j < a_.cols(); ++j) {
        if (a_(i, j) == 0) continue;
        BigInt v = abs(a_(i, j));
        if (!best || v < best_abs) {
          best = {i, j};
          best_abs = v;
          if (v == 1) goto found;
        }
      }
  found:
    if (!best) return false;
    swap_rows(t, best->first);
    swap_cols(t, best->second);
    return true;
  }

  void place_min_pivot_in_cross(std::size_t t) {
    std::size_t bi = t, bj = t;
    BigInt best = abs(a_(t, t));
    for (std::size_t i = t + 1; i < a_.rows(); ++i)
      if (a_(i, t) != 0 && abs(a_(i, t)) < best) {
        best = abs(a_(i, t));
        bi = i;
        bj = t;
      }
    for (std::size_t j = t + 1; j < a_.cols(); ++j)
      if (a_(t, j) != 0 && abs(a_(t, j)) < best) {
        best = abs(a_(t, j));
        bi = t;
        bj = j;
      }
    swap_rows(t, bi);
    swap_cols(t, bj);
  }

  IntMatrix a_;
  bool track_;
  IntMatrix u_, u_inv_, v_, v_inv_;
};

}  // namespace detail

inline SmithForm snf(const IntMatrix& m, bool track = true) { return detail::SmithWorker(m, track).run(); }

inline SmithForm snf(const SparseIntMatrix& m, bool track = true) { return snf(m.to_dense(), track); }

/// A finitely generated abelian group Z^rank + sum Z/d_i with d_1 | d_2 | ...
/// and every d_i >= 2.
struct AbelianGroup {
  std::size_t rank = 0;
  std::vector<BigInt> torsion;

  bool trivial() const { return rank == 0 && torsion.empty(); }

  /// Product of the torsion orders (the order when rank is 0).
  BigInt torsion_order() const {
    BigInt n = 1;
    for (const auto& d : torsion) n *= d;
    return n;
  }

  std::string to_string() const {
    if (trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (rank > 0) {
      os << "Z";
      if (rank > 1) os << "^" << rank;
      first = false;
    }
    for (const auto& d : torsion) {
      os << (first ? "" : "+") << "Z/" << d;
      first = false;
    }
    return os.str();
  }

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// Cokernel of M : Z^cols -> Z^rows.
inline AbelianGroup cokernel(const IntMatrix& m) {
  SmithForm sf = snf(m, false);
  AbelianGroup g;
  g.rank = m.rows() - sf.rank;
  for (std::size_t i = 0; i < sf.rank; ++i)
    if (sf.D(i, i) != 1) g.torsion.push_back(sf.D(i, i));
  return g;
}

/// Graded free Z-modules C_lo .. C_hi with boundaries d_q : C_q -> C_{q-1}.
class ChainComplex {
 public:
  ChainComplex() = default;

  /// boundaries[q] must be dim(q-1) x dim(q) for lo < q <= hi; missing
  /// entries are zero maps. Labels are optional.
  ChainComplex(int lo, std::vector<std::size_t> dims, std::map<int, SparseIntMatrix> boundaries,
               std::vector<std::vector<std::string>> labels = {})
      : lo_(lo), dims_(std::move(dims)), labels_(std::move(labels)) {
    for (int q = lo_ + 1; q <= max_degree(); ++q) {
      auto it = boundaries.find(q);
      if (it == boundaries.end()) {
        boundaries_.emplace(q, SparseIntMatrix(dim(q - 1), dim(q)));
        continue;
      }
      if (it->second.rows() != dim(q - 1) || it->second.cols() != dim(q))
        throw ComplexInvalid("ChainComplex: boundary shape mismatch in degree " + std::to_string(q));
      boundaries_.emplace(q, std::move(it->second));
    }
    for (const auto& [q, b] : boundaries)
      if ((q <= lo_ || q > max_degree()) && !b.is_zero())
        throw ComplexInvalid("ChainComplex: boundary outside the degree range");
    if (!labels_.empty() && labels_.size() != dims_.size())
      throw ComplexInvalid("ChainComplex: label table does not match degrees");
    for (std::size_t k = 0; k < labels_.size(); ++k)
      if (labels_[k].size() != dims_[k]) throw ComplexInvalid("ChainComplex: label count mismatch");
    for (int q = lo_ + 2; q <= max_degree(); ++q)
      if (!(boundaries_.at(q - 1) * boundaries_.at(q)).is_zero())
        throw ComplexInvalid("ChainComplex: boundary squares to nonzero in degree " + std::to_string(q));
  }

  int min_degree() const { return lo_; }
  int max_degree() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  bool in_range(int q) const { return q >= lo_ && q <= max_degree(); }

  std::size_t dim(int q) const { return in_range(q) ? dims_[static_cast<std::size_t>(q - lo_)] : 0; }

  std::size_t total_dim() const {
    std::size_t n = 0;
    for (auto d : dims_) n += d;
    return n;
  }

  /// d_q : C_q -> C_{q-1}; a zero matrix of the right shape outside the range.
  SparseIntMatrix boundary(int q) const {
    auto it = boundaries_.find(q);
    if (it != boundaries_.end()) return it->second;
    return SparseIntMatrix(dim(q - 1), dim(q));
  }

  const SparseIntMatrix* boundary_ptr(int q) const {
    auto it = boundaries_.find(q);
    return it == boundaries_.end() ? nullptr : &it->second;
  }

  bool has_labels() const { return !labels_.empty(); }
  const std::string& label(int q, std::size_t i) const {
    return labels_.at(static_cast<std::size_t>(q - lo_)).at(i);
  }

  /// Sum over q of (-1)^q dim C_q.
  long euler_characteristic() const {
    long chi = 0;
    for (int q = lo_; q <= max_degree(); ++q) chi += (q % 2 == 0 ? 1 : -1) * static_cast<long>(dim(q));
    return chi;
  }

 private:
  int lo_ = 0;
  std::vector<std::size_t> dims_;
  std::map<int, SparseIntMatrix> boundaries_;
  std::vector<std::vector<std::string>> labels_;
};

struct HomologyGroup {
  AbelianGroup group;
  std::vector<SparseVec> free_generators;     // representative cycles, one per Z summand
  std::vector<SparseVec> torsion_generators;  // one per Z/d_i, same order as torsion
};

struct HomologySummary {
  std::map<int, HomologyGroup> groups;  // nontrivial degrees only

  AbelianGroup at(int q) const {
    auto it = groups.find(q);
    return it == groups.end() ? AbelianGroup{} : it->second.group;
  }

  /// Degreewise comparison of the groups, ignoring generators.
  bool same_groups(const HomologySummary& o) const {
    if (groups.size() != o.groups.size()) return false;
    for (const auto& [q, g] : groups)
      if (!(o.at(q) == g.group)) return false;
    return true;
  }

  long euler_characteristic() const {
    long chi = 0;
    for (const auto& [q, g] : groups) chi += (q % 2 == 0 ? 1 : -1) * static_cast<long>(g.group.rank);
    return chi;
  }

  std::string to_string() const {
    if (groups.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [q, g] : groups) {
      os << (first ? "" : ", ") << "H" << q << "=" << g.group.to_string();
      first = false;
    }
    return os.str();
  }
};

/// Coordinates of a homology class: residues against the torsion summands
/// and integer coordinates against the free summands.
struct HomologyClass {
  std::vector<BigInt> torsion;
  std::vector<BigInt> free;

  bool is_zero() const {
    auto z = [](const BigInt& v) { return v == 0; };
    return std::all_of(torsion.begin(), torsion.end(), z) && std::all_of(free.begin(), free.end(), z);
  }
};

/// Homology via elimination of unit pivots followed by a dense Smith form
/// of what remains. With tracking on, the elimination steps are kept so that
/// classes can be lifted to and classified from the original basis.
class HomologyComputer {
 public:
  explicit HomologyComputer(const ChainComplex& c, bool track = true) : complex_(c), track_(track) {
    reduce();
    solve();
  }

  const HomologySummary& summary() const { return summary_; }
  const ChainComplex& complex() const { return complex_; }

  /// Class of a cycle given in the original basis of degree q.
  HomologyClass classify(int q, const SparseVec& cycle) const {
    if (!track_) throw PreconditionViolation("classify: computer built without tracking");
    if (!complex_.boundary(q).apply(cycle).empty()) throw PreconditionViolation("classify: not a cycle");
    HomologyClass cls;
    if (!complex_.in_range(q)) return cls;
    const Degree& deg = degree(q);
    std::vector<BigInt> y = deg.U * to_reduced(q, project(q, cycle));
    for (std::size_t i = 0; i < deg.rank_in; ++i)
      if (deg.diag[i] != 1) {
        BigInt r = y[i] % deg.diag[i];
        if (r < 0) r += deg.diag[i];
        cls.torsion.push_back(r);
      }
    std::vector<BigInt> tail(y.begin() + static_cast<long>(deg.rank_in), y.end());
    std::vector<BigInt> w = deg.K_V_inv * tail;
    for (std::size_t i = 0; i < deg.rank_out; ++i)
      if (w[i] != 0) throw std::logic_error("classify: reduced cycle left the kernel");
    cls.free.assign(w.begin() + static_cast<long>(deg.rank_out), w.end());
    return cls;
  }

  /// Sizes of the reduced complex per degree (diagnostic).
  std::vector<std::size_t> reduced_dims() const {
    std::vector<std::size_t> out;
    for (const auto& d : degrees_) out.push_back(d.alive.size());
    return out;
  }

 private:
  struct Step {
    int q;              // sigma in C_q, tau in C_{q-1}
    std::size_t sigma;
    std::size_t tau;
    int e;              // <d sigma, tau> = e = +-1
    SparseVec column;   // d sigma at elimination time
    SparseVec row;      // row tau at elimination time, indexed by C_q
  };

  struct Degree {
    std::vector<std::size_t> alive;                // surviving original indices
    std::map<std::size_t, std::size_t> position;   // original -> reduced
    IntMatrix U, U_inv;                            // SNF of the incoming boundary
    std::vector<BigInt> diag;
    std::size_t rank_in = 0;                       // rank of d_{q+1}
    IntMatrix K_V, K_V_inv;                        // SNF of d_q on the complement
    std::size_t rank_out = 0;
  };

  const Degree& degree(int q) const { return degrees_[static_cast<std::size_t>(q - complex_.min_degree())]; }
  Degree& degree(int q) { return degrees_[static_cast<std::size_t>(q - complex_.min_degree())]; }

  void reduce() {
    const int lo = complex_.min_degree();
    const int hi = complex_.max_degree();
    std::vector<std::vector<bool>> dead;
    for (int q = lo; q <= hi; ++q) dead.emplace_back(complex_.dim(q), false);
    auto is_dead = [&](int q, std::size_t i) { return dead[static_cast<std::size_t>(q - lo)][i]; };

    for (int q = lo + 1; q <= hi; ++q) {
      const SparseIntMatrix& src = *complex_.boundary_ptr(q);
      std::vector<SparseVec> cols(src.cols());
      std::vector<std::set<std::size_t>> rows(src.rows());
      for (std::size_t j = 0; j < src.cols(); ++j)
        for (const auto& [i, v] : src.column(j))
          if (!is_dead(q - 1, i)) {
            cols[j].emplace(i, v);
            rows[i].insert(j);
          }
      auto eliminate = [&](std::size_t tau, std::size_t sigma) {
        const int e = cols[sigma].at(tau) == 1 ? 1 : -1;
        const SparseVec col_sigma = cols[sigma];
        SparseVec row_tau;
        for (std::size_t j : rows[tau])
          if (j != sigma) row_tau.emplace(j, cols[j].at(tau));
        for (const auto& [rho, coef] : row_tau) {
          const BigInt k = -(e * coef);
          SparseVec& target = cols[rho];
          for (const auto& [i, v] : col_sigma) {
            auto [it, inserted] = target.try_emplace(i, BigInt(k * v));
            if (inserted) {
              rows[i].insert(rho);
            } else {
              it->second += k * v;
              if (it->second == 0) {
                target.erase(it);
                rows[i].erase(rho);
              }
            }
          }
        }
        for (const auto& entry : col_sigma) rows[entry.first].erase(sigma);
        cols[sigma].clear();
        if (!rows[tau].empty()) throw std::logic_error("homology: pivot row not cleared");
        dead[static_cast<std::size_t>(q - lo)][sigma] = true;
        dead[static_cast<std::size_t>(q - 1 - lo)][tau] = true;
        if (track_) steps_.push_back({q, sigma, tau, e, col_sigma, row_tau});
      };
      // Sweeps over the columns, taking unit pivots whose Markowitz cost is
      // under a threshold that grows only when a sweep makes no progress.
      std::size_t threshold = 0;
      for (;;) {
        bool any_unit = false, progressed = false;
        for (std::size_t j = 0; j < cols.size(); ++j) {
          if (cols[j].empty()) continue;
          std::optional<std::size_t> pivot;
          for (const auto& [i, v] : cols[j])
            if ((v == 1 || v == -1) && (!pivot || rows[i].size() < rows[*pivot].size())) pivot = i;
          if (!pivot) continue;
          any_unit = true;
          if ((cols[j].size() - 1) * (rows[*pivot].size() - 1) <= threshold) {
            eliminate(*pivot, j);
            progressed = true;
          }
        }
        if (!any_unit) break;
        if (!progressed) threshold = threshold == 0 ? 1 : 4 * threshold;
      }
      reduced_.emplace(q, std::move(cols));
    }

    degrees_.resize(static_cast<std::size_t>(hi - lo + 1));
    for (int q = lo; q <= hi; ++q) {
      Degree& d = degree(q);
      for (std::size_t i = 0; i < complex_.dim(q); ++i)
        if (!is_dead(q, i)) {
          d.position.emplace(i, d.alive.size());
          d.alive.push_back(i);
        }
    }
  }

  IntMatrix reduced_boundary(int q) const {
    const Degree& src = degree(q);
    const std::size_t rows = complex_.in_range(q - 1) ? degree(q - 1).alive.size() : 0;
    IntMatrix out(rows, src.alive.size());
    auto it = reduced_.find(q);
    if (it == reduced_.end()) return out;
    const Degree& tgt = degree(q - 1);
    for (std::size_t j = 0; j < src.alive.size(); ++j)
      for (const auto& [i, v] : it->second[src.alive[j]]) {
        auto pos = tgt.position.find(i);
        if (pos != tgt.position.end()) out(pos->second, j) = v;
      }
    return out;
  }

  void solve() {
    const int lo = complex_.min_degree();
    const int hi = complex_.max_degree();
    for (int q = lo; q <= hi; ++q) {
      Degree& d = degree(q);
      const std::size_t n = d.alive.size();
      if (q < hi) {
        SmithForm sf = snf(reduced_boundary(q + 1), true);
        d.U = std::move(sf.U);
        d.U_inv = std::move(sf.U_inv);
        d.rank_in = sf.rank;
        d.diag = sf.diagonal();
        d.diag.resize(sf.rank);
      } else {
        d.U = IntMatrix::identity(n);
        d.U_inv = d.U;
      }
      IntMatrix K = reduced_boundary(q) * d.U_inv.column_block(d.rank_in, n - d.rank_in);
      SmithForm kf = snf(K, true);
      d.K_V = std::move(kf.V);
      d.K_V_inv = std::move(kf.V_inv);
      d.rank_out = kf.rank;

      HomologyGroup hg;
      hg.group.rank = n - d.rank_in - d.rank_out;
      for (std::size_t i = 0; i < d.rank_in; ++i)
        if (d.diag[i] != 1) {
          hg.group.torsion.push_back(d.diag[i]);
          if (track_) hg.torsion_generators.push_back(lift(q, d.U_inv.column(i)));
        }
      if (track_)
        for (std::size_t k = d.rank_out; k < n - d.rank_in; ++k) {
          std::vector<BigInt> coeff = d.K_V.column(k);
          std::vector<BigInt> v(n);
          for (std::size_t i = 0; i < n - d.rank_in; ++i) {
            if (coeff[i] == 0) continue;
            for (std::size_t r = 0; r < n; ++r) v[r] += d.U_inv(r, d.rank_in + i) * coeff[i];
          }
          hg.free_generators.push_back(lift(q, v));
        }
      if (!hg.group.trivial()) summary_.groups.emplace(q, std::move(hg));
    }
  }

  // Projection of an original chain onto the reduced complex.
  SparseVec project(int q, SparseVec x) const {
    for (const Step& s : steps_) {
      if (s.q == q + 1) {
        auto it = x.find(s.tau);
        if (it == x.end()) continue;
        BigInt k = -(s.e * it->second);
        axpy(x, k, s.column);
      } else if (s.q == q) {
        x.erase(s.sigma);
      }
    }
    return x;
  }

  std::vector<BigInt> to_reduced(int q, const SparseVec& x) const {
    const Degree& d = degree(q);
    std::vector<BigInt> out(d.alive.size());
    for (const auto& [i, v] : x) {
      auto pos = d.position.find(i);
      if (pos == d.position.end()) throw std::logic_error("homology: projection left the reduced basis");
      out[pos->second] = v;
    }
    return out;
  }

  // Inclusion of a reduced chain back into the original complex.
  SparseVec lift(int q, const std::vector<BigInt>& v) const {
    const Degree& d = degree(q);
    SparseVec x;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) x.emplace(d.alive[i], v[i]);
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
      if (it->q != q) continue;
      BigInt dot = 0;
      for (const auto& [j, c] : it->row) {
        auto f = x.find(j);
        if (f != x.end()) dot += c * f->second;
      }
      if (dot != 0) x[it->sigma] = -(it->e * dot);
    }
    return x;
  }

  ChainComplex complex_;
  bool track_;
  std::vector<Step> steps_;
  std::map<int, std::vector<SparseVec>> reduced_;
  std::vector<Degree> degrees_;
  HomologySummary summary_;
};

inline HomologySummary homology(const ChainComplex& c, bool with_generators = false) {
  return HomologyComputer(c, with_generators).summary();
}

/// Degree-preserving chain map A -> B given by its components f_q : A_q -> B_q.
struct ChainMap {
  std::map<int, SparseIntMatrix> components;

  SparseIntMatrix component(const ChainComplex& source, const ChainComplex& target, int q) const {
    auto it = components.find(q);
    if (it != components.end()) return it->second;
    return SparseIntMatrix(target.dim(q), source.dim(q));
  }
};

/// Throws NotAChainMap unless d f = f d in every degree.
inline void verify_chain_map(const ChainComplex& source, const ChainComplex& target, const ChainMap& f) {
  for (const auto& [q, m] : f.components)
    if (m.rows() != target.dim(q) || m.cols() != source.dim(q))
      throw NotAChainMap("chain map: component shape mismatch in degree " + std::to_string(q));
  const int lo = std::min(source.min_degree(), target.min_degree());
  const int hi = std::max(source.max_degree(), target.max_degree());
  for (int q = lo + 1; q <= hi; ++q) {
    SparseIntMatrix lhs = target.boundary(q) * f.component(source, target, q);
    SparseIntMatrix rhs = f.component(source, target, q - 1) * source.boundary(q);
    if (!(lhs == rhs)) throw NotAChainMap("chain map: fails to commute in degree " + std::to_string(q));
  }
}

/// Cone of f : A -> B with C_q = A_{q-1} + B_q (A part first) and
/// d(x, y) = (-d x, f(x) + d y). The cone of multiplication by k on Z in
/// degree n is Z/k in degree n.
inline ChainComplex mapping_cone(const ChainComplex& source, const ChainComplex& target, const ChainMap& f) {
  verify_chain_map(source, target, f);
  const int lo = std::min(source.min_degree() + 1, target.min_degree());
  const int hi = std::max(source.max_degree() + 1, target.max_degree());
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::string>> labels;
  const bool with_labels = source.has_labels() && target.has_labels();
  for (int q = lo; q <= hi; ++q) {
    dims.push_back(source.dim(q - 1) + target.dim(q));
    if (with_labels) {
      std::vector<std::string> l;
      for (std::size_t i = 0; i < source.dim(q - 1); ++i) l.push_back("A:" + source.label(q - 1, i));
      for (std::size_t i = 0; i < target.dim(q); ++i) l.push_back("B:" + target.label(q, i));
      labels.push_back(std::move(l));
    }
  }
  std::map<int, SparseIntMatrix> bd;
  for (int q = lo + 1; q <= hi; ++q) {
    const std::size_t a_in = source.dim(q - 1), b_in = target.dim(q);
    const std::size_t a_out = source.dim(q - 2), b_out = target.dim(q - 1);
    SparseIntMatrix m(a_out + b_out, a_in + b_in);
    for (const auto& e : source.boundary(q - 1).entries()) m.add(e.row, e.col, -e.value);
    for (const auto& e : f.component(source, target, q - 1).entries()) m.add(a_out + e.row, e.col, e.value);
    for (const auto& e : target.boundary(q).entries()) m.add(a_out + e.row, a_in + e.col, e.value);
    bd.emplace(q, std::move(m));
  }
  return ChainComplex(lo, std::move(dims), std::move(bd), std::move(labels));
}

/// Images of the generators of H_q(source) under a chain map of degree
/// `shift`, classified in H_{q+shift}(target). Free generators come first.
inline std::vector<HomologyClass> induced_map(const HomologyComputer& source, const HomologyComputer& target, int q,
                                              const SparseIntMatrix& component, int shift = 0) {
  std::vector<HomologyClass> out;
  auto it = source.summary().groups.find(q);
  if (it == source.summary().groups.end()) return out;
  for (const auto& g : it->second.free_generators) out.push_back(target.classify(q + shift, component.apply(g)));
  for (const auto& g : it->second.torsion_generators)
    out.push_back(target.classify(q + shift, component.apply(g)));
  return out;
}

/// Either a convex combination of the points equal to the target, or a
/// functional (normal, offset) with normal.p >= offset > normal.target for
/// every point p.
struct LpCertificate {
  bool separated = false;
  std::vector<Rational> combination;
  std::vector<Rational> normal;
  Rational offset;
};

namespace detail {

inline Rational dot(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

// Scale a separator to coprime integers; positive scaling keeps it valid.
inline void normalize_separator(std::vector<Rational>& h, Rational& delta) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  BigInt l = denominator(delta);
  for (const auto& v : h) l = lcm(l, denominator(v));
  for (auto& v : h) v *= l;
  delta *= l;
  BigInt g = abs(numerator(delta));
  for (const auto& v : h) g = gcd(g, abs(numerator(v)));
  if (g > 1) {
    for (auto& v : h) v /= g;
    delta /= g;
  }
}

}  // namespace detail

inline bool verify_certificate(const std::vector<std::vector<Rational>>& points, const std::vector<Rational>& target,
                               const LpCertificate& cert) {
  if (cert.separated) {
    if (cert.normal.size() != target.size()) return false;
    if (!(cert.offset > detail::dot(cert.normal, target))) return false;
    for (const auto& p : points)
      if (detail::dot(cert.normal, p) < cert.offset) return false;
    return true;
  }
  if (cert.combination.size() != points.size()) return false;
  Rational total = 0;
  std::vector<Rational> sum(target.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (cert.combination[i] < 0) return false;
    total += cert.combination[i];
    for (std::size_t k = 0; k < target.size(); ++k) sum[k] += cert.combination[i] * points[i][k];
  }
  return total == 1 && sum == target;
}

/// Exact phase-one simplex (Bland's rule) deciding whether target lies in
/// the convex hull of points; the returned certificate is checked exactly.
inline LpCertificate lp_separate(const std::vector<std::vector<Rational>>& points, const std::vector<Rational>& target) {
  const std::size_t d = target.size();
  for (const auto& p : points)
    if (p.size() != d) throw DimensionMismatch("lp_separate: points and target differ in dimension");
  const std::size_t n = points.size();
  LpCertificate cert;
  if (n == 0) {
    cert.separated = true;
    cert.normal.assign(d, Rational(0));
    cert.offset = 1;
    return cert;
  }
  const std::size_t m = d + 1;              // rows: coordinates, then sum of weights
  const std::size_t width = n + m + 1;      // weights, artificials, right-hand side
  std::vector<std::vector<Rational>> tab(m + 1, std::vector<Rational>(width));
  std::vector<int> sign(m, 1);
  for (std::size_t k = 0; k < m; ++k) {
    Rational rhs = k < d ? target[k] : Rational(1);
    if (rhs < 0) sign[k] = -1;
    for (std::size_t i = 0; i < n; ++i) tab[k][i] = sign[k] * (k < d ? points[i][k] : Rational(1));
    tab[k][n + k] = 1;
    tab[k][width - 1] = sign[k] * rhs;
  }
  // Reduced-cost row for minimizing the sum of artificials.
  std::vector<Rational>& cost = tab[m];
  for (std::size_t j = 0; j < width; ++j) {
    if (j >= n && j < n + m) continue;
    for (std::size_t k = 0; k < m; ++k) cost[j] -= tab[k][j];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t k = 0; k < m; ++k) basis[k] = n + k;

  for (;;) {
    std::optional<std::size_t> enter;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (!enter) break;
    std::optional<std::size_t> leave;
    Rational best_ratio;
    for (std::size_t k = 0; k < m; ++k) {
      if (!(tab[k][*enter] > 0)) continue;
      Rational ratio = tab[k][width - 1] / tab[k][*enter];
      if (!leave || ratio < best_ratio || (ratio == best_ratio && basis[k] < basis[*leave])) {
        leave = k;
        best_ratio = ratio;
      }
    }
    if (!leave) throw std::logic_error("lp_separate: phase one unbounded");
    const std::size_t r = *leave;
    const Rational piv = tab[r][*enter];
    for (auto& v : tab[r]) v /= piv;
    for (std::size_t k = 0; k <= m; ++k) {
      if (k == r || tab[k][*enter] == 0) continue;
      const Rational f = tab[k][*enter];
      for (std::size_t j = 0; j < width; ++j)
        if (tab[r][j] != 0) tab[k][j] -= f * tab[r][j];
    }
    basis[r] = *enter;
  }

  if (cost[width - 1] == 0) {
    cert.separated = false;
    cert.combination.assign(n, Rational(0));
    for (std::size_t k = 0; k < m; ++k)
      if (basis[k] < n) cert.combination[basis[k]] = tab[k][width - 1];
  } else {
    // Dual multipliers y_k = 1 - reduced cost of artificial k, undoing the
    // row sign flips. y.(p,1) <= 0 < y.(target,1).
    std::vector<Rational> y(m);
    for (std::size_t k = 0; k < m; ++k) y[k] = sign[k] * (1 - cost[n + k]);
    cert.separated = true;
    cert.normal.resize(d);
    for (std::size_t k = 0; k < d; ++k) cert.normal[k] = -y[k];
    cert.offset = y[d];
    detail::normalize_separator(cert.normal, cert.offset);
  }
  if (!verify_certificate(points, target, cert)) throw std::logic_error("lp_separate: certificate failed verification");
  return cert;
}

}  // namespace cuspk

#endif  // CUSPK_HOMLINALG_HPP
