#pragma once

// Dense exact matrices over a field K (Rational or Fp). Dimensions in this
// domain are tiny (stalk dims x face counts), so everything is dense and
// zero-row/zero-column matrices are first-class citizens: the 0x0 matrix is
// invertible, a 0xk matrix has rank 0, and so on.

#include <mdiag/rational.hpp>

#include <optional>
#include <vector>

namespace mdiag {

template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw value_error("negative matrix shape");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }
  static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  K& operator()(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const K& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  bool is_zero() const {
    for (const K& x : e_)
      if (!(x == K(0))) return false;
    return true;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw value_error("matrix shape mismatch in product");
    Matrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (a(i, k) == K(0)) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) = c(i, j) + a(i, k) * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw value_error("matrix shape mismatch in sum");
    Matrix c(a.rows_, a.cols_);
    for (size_t i = 0; i < a.e_.size(); ++i) c.e_[i] = a.e_[i] + b.e_[i];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw value_error("matrix shape mismatch in difference");
    Matrix c(a.rows_, a.cols_);
    for (size_t i = 0; i < a.e_.size(); ++i) c.e_[i] = a.e_[i] - b.e_[i];
    return c;
  }
  Matrix operator-() const {
    Matrix c(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) c.e_[i] = -e_[i];
    return c;
  }
  friend Matrix operator*(const K& s, const Matrix& a) {
    Matrix c(a.rows_, a.cols_);
    for (size_t i = 0; i < a.e_.size(); ++i) c.e_[i] = s * a.e_[i];
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (size_t i = 0; i < a.e_.size(); ++i)
      if (!(a.e_[i] == b.e_[i])) return false;
    return true;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix column(int j) const {
    Matrix c(rows_, 1);
    for (int i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<K> e_;
};

template <class K>
Matrix<K> hstack(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows()) throw value_error("hstack shape mismatch");
  Matrix<K> c(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

// In-place reduced row echelon form; returns the pivot column indices.
template <class K>
std::vector<int> rref_inplace(Matrix<K>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < m.rows(); ++i)
      if (!(m(i, col) == K(0))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    K inv = K(1) / m(row, col);
    for (int j = 0; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == K(0)) continue;
      K f = m(i, col);
      for (int j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
int rank_gauss(Matrix<K> m) {
  return static_cast<int>(rref_inplace(m).size());
}

// Fraction-free (Bareiss) elimination over Z, after clearing row
// denominators. Keeps intermediate entries integral; pivoting picks the
// first nonzero entry for determinism.
inline int bareiss_rank(const Matrix<Rational>& q) {
  int rows = q.rows(), cols = q.cols();
  std::vector<std::vector<Integer>> m(rows, std::vector<Integer>(cols));
  for (int i = 0; i < rows; ++i) {
    Integer l = 1;
    for (int j = 0; j < cols; ++j) l = lcm(l, q(i, j).get_den());
    for (int j = 0; j < cols; ++j) {
      Rational s = q(i, j) * Rational(l);
      m[i][j] = s.get_num();
    }
  }
  Integer prev = 1;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int piv = -1;
    for (int i = row; i < rows; ++i)
      if (m[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row) std::swap(m[piv], m[row]);
    for (int i = row + 1; i < rows; ++i) {
      for (int j = col + 1; j < cols; ++j)
        m[i][j] = (m[i][j] * m[row][col] - m[i][col] * m[row][j]) / prev;
      m[i][col] = 0;
    }
    prev = m[row][col];
    ++row;
  }
  return row;
}

inline Rational determinant(const Matrix<Rational>& q) {
  if (q.rows() != q.cols()) throw value_error("determinant of non-square matrix");
  int n = q.rows();
  if (n == 0) return Rational(1);
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
  Rational scale = 1;  // det(original) = det(integer matrix) / scale
  for (int i = 0; i < n; ++i) {
    Integer l = 1;
    for (int j = 0; j < n; ++j) l = lcm(l, q(i, j).get_den());
    scale *= Rational(l);
    for (int j = 0; j < n; ++j) m[i][j] = Rational(q(i, j) * Rational(l)).get_num();
  }
  Integer prev = 1;
  int sign = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (m[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return Rational(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      sign = -sign;
    }
    for (int i = col + 1; i < n; ++i) {
      for (int j = col + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[col][col] - m[i][col] * m[col][j]) / prev;
      m[i][col] = 0;
    }
    prev = m[col][col];
  }
  return Rational(sign * m[n - 1][n - 1]) / scale;
}

template <class K>
int rank(const Matrix<K>& m) {
  if constexpr (std::is_same_v<K, Rational>)
    return bareiss_rank(m);
  else
    return rank_gauss(m);
}

template <class K>
bool is_invertible(const Matrix<K>& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

// Basis of the right kernel, one column per free variable. The RREF-based
// construction is canonical given the column order.
template <class K>
Matrix<K> kernel_basis(Matrix<K> m) {
  int cols = m.cols();
  std::vector<int> pivots = rref_inplace(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix<K> basis(cols, static_cast<int>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    basis(free_cols[k], static_cast<int>(k)) = K(1);
    for (size_t r = 0; r < pivots.size(); ++r)
      basis(pivots[r], static_cast<int>(k)) = -m(static_cast<int>(r), free_cols[k]);
  }
  return basis;
}

template <class K>
int kernel_dim(const Matrix<K>& m) {
  return m.cols() - rank(m);
}

// Exact solve A X = B; nullopt if inconsistent. Free variables are set to 0.
template <class K>
std::optional<Matrix<K>> solve(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows()) throw value_error("solve shape mismatch");
  Matrix<K> aug = hstack(a, b);
  std::vector<int> pivots = rref_inplace(aug);
  for (int c : pivots)
    if (c >= a.cols()) return std::nullopt;
  Matrix<K> x(a.cols(), b.cols());
  for (size_t r = 0; r < pivots.size(); ++r)
    for (int j = 0; j < b.cols(); ++j)
      x(pivots[r], j) = aug(static_cast<int>(r), a.cols() + j);
  return x;
}

template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  return solve(m, Matrix<K>::identity(m.rows()));
}

template <class K>
Matrix<K> compose(const Matrix<K>& a, const Matrix<K>& b) {
  return a * b;  // apply b first
}

}  // namespace mdiag
