#pragma once

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kron/errors.hpp"
#include "kron/field.hpp"

namespace kron {

/// Dense matrix over an exact field.  Empty shapes (0 rows and/or 0 columns)
/// are legal everywhere and behave as the corresponding linear maps between
/// zero-dimensional spaces.  All operations are exact; there is no floating
/// point and no tolerance anywhere.
template <field F>
class Matrix {
 public:
  using value_type = typename F::value_type;

  Matrix(F f, std::size_t rows, std::size_t cols)
      : f_(std::move(f)), rows_(rows), cols_(cols), e_(rows * cols, f_.zero()) {}

  static Matrix identity(F f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, m.f_.one());
    return m;
  }

  /// Builds a matrix from integer rows; shape is deduced (all rows must have
  /// equal length).  Used pervasively by tests and fixtures.
  static Matrix from_rows(F f, const std::vector<std::vector<long long>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) {
        throw ShapeMismatch("ragged row list in Matrix::from_rows");
      }
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, m.f_.from_int(rows[i][j]));
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const F& field() const { return f_; }

  const value_type& at(std::size_t i, std::size_t j) const {
    return e_[i * cols_ + j];
  }
  void set(std::size_t i, std::size_t j, value_type v) {
    e_[i * cols_ + j] = std::move(v);
  }

  bool operator==(const Matrix& o) const {
    if (!(f_ == o.f_) || rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t k = 0; k < e_.size(); ++k) {
      if (!f_.eq(e_[k], o.e_[k])) return false;
    }
    return true;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& v : e_) {
      if (!f_.is_zero(v)) return false;
    }
    return true;
  }

  bool is_square() const { return rows_ == cols_; }

  Matrix transpose() const {
    Matrix t(f_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
    }
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    require_same_field(o);
    if (cols_ != o.rows_) {
      throw ShapeMismatch("product of " + shape_string() + " and " +
                          o.shape_string());
    }
    Matrix r(f_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const value_type& a = at(i, k);
        if (f_.is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          r.set(i, j, f_.add(r.at(i, j), f_.mul(a, o.at(k, j))));
        }
      }
    }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    require_same_shape(o, "sum");
    Matrix r(f_, rows_, cols_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = f_.add(e_[k], o.e_[k]);
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    require_same_shape(o, "difference");
    Matrix r(f_, rows_, cols_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = f_.sub(e_[k], o.e_[k]);
    return r;
  }

  Matrix scaled(const value_type& s) const {
    Matrix r(f_, rows_, cols_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = f_.mul(e_[k], s);
    return r;
  }

  Matrix negated() const {
    Matrix r(f_, rows_, cols_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = f_.neg(e_[k]);
    return r;
  }

  /// Copy of the sub-block starting at (i0, j0) with the given extent.
  Matrix block(std::size_t i0, std::size_t j0, std::size_t nrows,
               std::size_t ncols) const {
    if (i0 + nrows > rows_ || j0 + ncols > cols_) {
      throw ShapeMismatch("block exceeds " + shape_string());
    }
    Matrix r(f_, nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i) {
      for (std::size_t j = 0; j < ncols; ++j) r.set(i, j, at(i0 + i, j0 + j));
    }
    return r;
  }

  /// Writes m into this matrix with its top-left corner at (i0, j0).
  void paste(std::size_t i0, std::size_t j0, const Matrix& m) {
    require_same_field(m);
    if (i0 + m.rows_ > rows_ || j0 + m.cols_ > cols_) {
      throw ShapeMismatch("paste exceeds " + shape_string());
    }
    for (std::size_t i = 0; i < m.rows_; ++i) {
      for (std::size_t j = 0; j < m.cols_; ++j) set(i0 + i, j0 + j, m.at(i, j));
    }
  }

  static Matrix hcat(const Matrix& a, const Matrix& b) {
    a.require_same_field(b);
    if (a.rows_ != b.rows_) {
      throw ShapeMismatch("hcat of " + a.shape_string() + " and " +
                          b.shape_string());
    }
    Matrix r(a.f_, a.rows_, a.cols_ + b.cols_);
    r.paste(0, 0, a);
    r.paste(0, a.cols_, b);
    return r;
  }

  static Matrix vcat(const Matrix& a, const Matrix& b) {
    a.require_same_field(b);
    if (a.cols_ != b.cols_) {
      throw ShapeMismatch("vcat of " + a.shape_string() + " and " +
                          b.shape_string());
    }
    Matrix r(a.f_, a.rows_ + b.rows_, a.cols_);
    r.paste(0, 0, a);
    r.paste(a.rows_, 0, b);
    return r;
  }

  /// Block-diagonal direct sum.
  static Matrix diag_sum(const Matrix& a, const Matrix& b) {
    a.require_same_field(b);
    Matrix r(a.f_, a.rows_ + b.rows_, a.cols_ + b.cols_);
    r.paste(0, 0, a);
    r.paste(a.rows_, a.cols_, b);
    return r;
  }

  /// Dimension of the row space (= column space), by Gaussian elimination
  /// with deterministic first-nonzero pivoting.
  std::size_t rank() const {
    Matrix w = *this;
    std::size_t rk = 0;
    for (std::size_t c = 0; c < cols_ && rk < rows_; ++c) {
      std::size_t sel = rows_;
      for (std::size_t r = rk; r < rows_; ++r) {
        if (!f_.is_zero(w.at(r, c))) {
          sel = r;
          break;
        }
      }
      if (sel == rows_) continue;
      w.swap_rows(sel, rk);
      const value_type pinv = f_.inv(w.at(rk, c));
      for (std::size_t r = rk + 1; r < rows_; ++r) {
        if (f_.is_zero(w.at(r, c))) continue;
        const value_type factor = f_.mul(w.at(r, c), pinv);
        w.set(r, c, f_.zero());
        for (std::size_t j = c + 1; j < cols_; ++j) {
          w.set(r, j, f_.sub(w.at(r, j), f_.mul(factor, w.at(rk, j))));
        }
      }
      ++rk;
    }
    return rk;
  }

  /// Reduced row echelon form; optionally reports the pivot columns.
  /// Deterministic: the pivot in each step is the first nonzero entry in
  /// (row, column) order.
  Matrix rref(std::vector<std::size_t>* pivot_cols = nullptr) const {
    Matrix w = *this;
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;
    for (std::size_t c = 0; c < cols_ && pr < rows_; ++c) {
      std::size_t sel = rows_;
      for (std::size_t r = pr; r < rows_; ++r) {
        if (!f_.is_zero(w.at(r, c))) {
          sel = r;
          break;
        }
      }
      if (sel == rows_) continue;
      w.swap_rows(sel, pr);
      const value_type pinv = f_.inv(w.at(pr, c));
      for (std::size_t j = c; j < cols_; ++j) {
        w.set(pr, j, f_.mul(w.at(pr, j), pinv));
      }
      for (std::size_t r = 0; r < rows_; ++r) {
        if (r == pr || f_.is_zero(w.at(r, c))) continue;
        const value_type factor = w.at(r, c);
        for (std::size_t j = c; j < cols_; ++j) {
          w.set(r, j, f_.sub(w.at(r, j), f_.mul(factor, w.at(pr, j))));
        }
      }
      pivots.push_back(c);
      ++pr;
    }
    if (pivot_cols) *pivot_cols = std::move(pivots);
    return w;
  }

  /// Basis of the right null space, as columns, in reduced-echelon
  /// convention: one column per free column of the reduced form, carrying a
  /// unit in that coordinate.  Deterministic; for a 0 x k matrix this is the
  /// k x k identity.
  Matrix solve_right_kernel() const {
    std::vector<std::size_t> pivots;
    Matrix r = rref(&pivots);
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    const std::size_t dim = cols_ - pivots.size();
    Matrix k(f_, cols_, dim);
    std::size_t out = 0;
    for (std::size_t fc = 0; fc < cols_; ++fc) {
      if (is_pivot[fc]) continue;
      k.set(fc, out, f_.one());
      for (std::size_t i = 0; i < pivots.size(); ++i) {
        k.set(pivots[i], out, f_.neg(r.at(i, fc)));
      }
      ++out;
    }
    return k;
  }

  /// Exact inverse; throws SingularMatrix when rank < n (and ShapeMismatch
  /// when not square).
  Matrix invert() const {
    if (!is_square()) {
      throw ShapeMismatch("inverse of non-square " + shape_string());
    }
    Matrix aug = hcat(*this, identity(f_, rows_));
    std::vector<std::size_t> pivots;
    Matrix r = aug.rref(&pivots);
    if (pivots.size() != rows_ ||
        (rows_ > 0 && pivots.back() >= rows_)) {
      throw SingularMatrix("matrix of shape " + shape_string() + " has rank " +
                           std::to_string(rank()));
    }
    return r.block(0, rows_, rows_, rows_);
  }

  bool is_invertible() const { return is_square() && rank() == rows_; }

  /// Multi-line human-readable rendering (debug/tests only).
  std::string to_string() const {
    std::ostringstream os;
    os << shape_string() << " over " << f_.name() << "\n";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) os << " ";
        os << f_.to_string(at(i, j));
      }
      os << "]\n";
    }
    return os.str();
  }

  std::string shape_string() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) {
      std::swap(e_[a * cols_ + j], e_[b * cols_ + j]);
    }
  }

 private:
  void require_same_field(const Matrix& o) const {
    if (!(f_ == o.f_)) throw ShapeMismatch("operands over different fields");
  }
  void require_same_shape(const Matrix& o, const char* op) const {
    require_same_field(o);
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw ShapeMismatch(std::string(op) + " of " + shape_string() + " and " +
                          o.shape_string());
    }
  }

  F f_;
  std::size_t rows_, cols_;
  std::vector<value_type> e_;
};

namespace detail {

/// Incremental row-space elimination over a fixed width: insert() reduces a
/// vector against the stored echelon rows and reports whether it enlarged
/// the span (storing the normalized residue when it did).
template <field F>
class RowEliminator {
 public:
  using value_type = typename F::value_type;

  RowEliminator(F f, std::size_t width) : f_(std::move(f)), width_(width) {}

  std::size_t rank() const { return rows_.size(); }

  bool insert(std::vector<value_type> v) {
    if (v.size() != width_) {
      throw ShapeMismatch("eliminator fed a vector of the wrong width");
    }
    reduce(v);
    std::size_t lead = width_;
    for (std::size_t j = 0; j < width_; ++j) {
      if (!f_.is_zero(v[j])) {
        lead = j;
        break;
      }
    }
    if (lead == width_) return false;
    const value_type pinv = f_.inv(v[lead]);
    for (std::size_t j = lead; j < width_; ++j) v[j] = f_.mul(v[j], pinv);
    std::size_t pos = 0;
    while (pos < rows_.size() && rows_[pos].first < lead) ++pos;
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos),
                 {lead, std::move(v)});
    return true;
  }

 private:
  // Stored rows have strictly increasing leading positions and zeros before
  // their lead, so one pass in lead order clears every stored pivot.
  void reduce(std::vector<value_type>& v) const {
    for (const auto& [lead, row] : rows_) {
      if (f_.is_zero(v[lead])) continue;
      const value_type c = v[lead];
      for (std::size_t j = lead; j < width_; ++j) {
        v[j] = f_.sub(v[j], f_.mul(c, row[j]));
      }
    }
  }

  F f_;
  std::size_t width_;
  std::vector<std::pair<std::size_t, std::vector<value_type>>> rows_;
};

}  // namespace detail

/// Indices of a lexicographically-first maximal independent set of rows
/// (found as the pivot columns of the transpose's reduced echelon form).
template <field F>
std::vector<std::size_t> independent_row_set(const Matrix<F>& m) {
  std::vector<std::size_t> pivots;
  m.transpose().rref(&pivots);
  return pivots;
}

/// Factors a full-column-rank matrix M (rows >= cols) as
///   M = C1 * (I; 0) * C2
/// with C1 (rows x rows) and C2 (cols x cols) invertible.  Deterministic:
/// C2 is the submatrix of M on its lexicographically-first independent row
/// set; C1 embeds M * C2^{-1} and completes it with unit columns on the
/// remaining rows.  Throws RankDeficient when rank(M) < cols.
template <field F>
std::pair<Matrix<F>, Matrix<F>> full_rank_factor_tall(const Matrix<F>& m) {
  const std::size_t r = m.rows(), c = m.cols();
  const std::vector<std::size_t> prows = independent_row_set(m);
  if (prows.size() < c) {
    throw RankDeficient("tall factorization of " + m.shape_string() +
                        " with rank " + std::to_string(prows.size()));
  }
  const F& f = m.field();
  Matrix<F> c2(f, c, c);
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < c; ++j) c2.set(i, j, m.at(prows[i], j));
  }
  const Matrix<F> e = m * c2.invert();  // rows restricted to prows give I_c
  Matrix<F> c1(f, r, r);
  c1.paste(0, 0, e);
  std::vector<bool> is_pivot_row(r, false);
  for (std::size_t pr : prows) is_pivot_row[pr] = true;
  std::size_t extra = c;
  for (std::size_t row = 0; row < r; ++row) {
    if (is_pivot_row[row]) continue;
    c1.set(row, extra, f.one());
    ++extra;
  }
  return {c1, c2};
}

/// Dual factorization of a full-row-rank matrix M (cols >= rows) as
///   M = D1 * (I 0) * D2
/// with D1 (rows x rows) and D2 (cols x cols) invertible; computed by
/// transposing the tall factorization.  Throws RankDeficient when
/// rank(M) < rows.
template <field F>
std::pair<Matrix<F>, Matrix<F>> full_rank_factor_wide(const Matrix<F>& m) {
  try {
    auto [c1, c2] = full_rank_factor_tall(m.transpose());
    return {c2.transpose(), c1.transpose()};
  } catch (const RankDeficient&) {
    throw RankDeficient("wide factorization of " + m.shape_string() +
                        " with rank " + std::to_string(m.rank()));
  }
}

}  // namespace kron
