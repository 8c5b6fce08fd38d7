#pragma once

// Exact integer / rational linear algebra.
//
// Lattices are Z-spans of matrix *columns* throughout. Integers are GMP
// integers, rationals are GMP rationals kept in lowest terms.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <vector>

#include "primlat/error.hpp"

namespace primlat {

using Int = mpz_class;
using Rat = mpq_class;

// num / den in lowest terms (the two-argument mpq constructor does not canonicalize).
inline Rat make_rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  // Row-major literal, e.g. Matrix<Int>::from_rows({{1, 0}, {0, 1}}).
  static Matrix from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    Matrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
    std::size_t i = 0;
    for (const auto& r : rows) {
      if (r.size() != m.cols_) throw Error(Errc::BadArgument, "ragged matrix literal");
      std::size_t j = 0;
      for (const auto& v : r) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  // Builds an n x k matrix from k column vectors of length n.
  static Matrix from_columns(const std::vector<std::vector<T>>& cols) {
    if (cols.empty()) throw Error(Errc::BadArgument, "no columns");
    Matrix m(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != m.rows_) throw Error(Errc::BadArgument, "ragged columns");
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  // Columns [first, first + count).
  Matrix col_block(std::size_t first, std::size_t count) const {
    Matrix m(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
    return m;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

  // col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const T& factor) {
    if (factor == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(Errc::BadArgument, "dimension mismatch in product");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(Errc::BadArgument, "dimension mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(Errc::BadArgument, "dimension mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  Matrix scaled(const T& s) const {
    Matrix c = *this;
    for (auto& v : c.data_) v *= s;
    return c;
  }

  const std::vector<T>& data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

// [A | B]
template <class T>
Matrix<T> hconcat(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw Error(Errc::BadArgument, "hconcat row mismatch");
  Matrix<T> m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

RatMatrix to_rat(const IntMatrix& m);
// Nullopt unless every entry has denominator 1.
std::optional<IntMatrix> to_int(const RatMatrix& m);
// Least common multiple of all denominators (1 for integral matrices).
Int common_denominator(const RatMatrix& m);

Int floor_div(const Int& a, const Int& b);

// Column Hermite form H = B * U of a full-column-rank integer matrix.
//
//   H[r_i, i] > 0, H[r_i, j] = 0 for j > i, 0 <= H[r_i, j] < H[r_i, i] for j < i,
//   and H[r, j] = 0 whenever r < r_j.
struct HermiteForm {
  IntMatrix H;
  IntMatrix U;
  std::vector<std::size_t> pivot_rows;
  int det_u = 1;  // det(U), always +1 or -1
};

// Column echelon form of an arbitrary integer matrix: M * U = [E | 0] with
// rank nonzero columns in Hermite shape. U is unimodular (n_cols x n_cols).
struct ColumnEchelon {
  IntMatrix E;
  IntMatrix U;
  std::vector<std::size_t> pivot_rows;
  std::size_t rank = 0;
  int det_u = 1;
};

ColumnEchelon column_echelon(const IntMatrix& m);

HermiteForm hnf(const IntMatrix& b);

// Fraction-free (Bareiss) determinant.
Int det_int(const IntMatrix& m);
Rat det_rat(const RatMatrix& m);

RatMatrix gram(const RatMatrix& b);
IntMatrix gram(const IntMatrix& b);

// det(B^t B); throws RankDeficient when it vanishes.
Rat covol_sq(const RatMatrix& b);
Int covol_sq(const IntMatrix& b);

// gcd of all d x d minors (d = number of columns).
Int minor_gcd(const IntMatrix& b);

// All d x d minors in lexicographic order of row subsets.
std::vector<Int> maximal_minors(const IntMatrix& b);
std::vector<Rat> maximal_minors(const RatMatrix& b);

// Basis (n x (n - rank)) of {x in Z^n : M x = 0}, in column Hermite form.
IntMatrix int_kernel(const IntMatrix& m);

// Basis of span_Q(B) intersected with Z^n, in column Hermite form.
IntMatrix saturate(const IntMatrix& b);

// C with det([B | C]) = +1. Requires minor_gcd(B) = 1.
IntMatrix unimodular_complete(const IntMatrix& b);

// Exact inverse over Q; throws RankDeficient for singular input.
RatMatrix inverse(const RatMatrix& m);

}  // namespace primlat
