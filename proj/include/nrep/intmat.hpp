#pragma once

#include "nrep/arith.hpp"

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nrep {

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, const T& fill = T(0)) : rows_(r), cols_(c), d_(r * c, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      d_.insert(d_.end(), row.begin(), row.end());
    }
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols = 0) {
    Matrix m(rows.size(), rows.empty() ? cols : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(d_.begin() + i * cols_, d_.begin() + (i + 1) * cols_);
  }
  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }
  void append_row(const std::vector<T>& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
    d_.insert(d_.end(), r.begin(), r.end());
    ++rows_;
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix c = a;
    for (std::size_t i = 0; i < c.d_.size(); ++i) c.d_[i] -= b.d_[i];
    return c;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix c = a;
    for (std::size_t i = 0; i < c.d_.size(); ++i) c.d_[i] += b.d_[i];
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
  }
  friend bool operator<(const Matrix& a, const Matrix& b) {
    return std::tie(a.rows_, a.cols_, a.d_) < std::tie(b.rows_, b.cols_, b.d_);
  }

  const std::vector<T>& data() const { return d_; }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
      os << "]";
    }
    return os << "]";
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> d_;
};

using ZMatrix = Matrix<mpz_class>;
using LMatrix = Matrix<long long>;
using ZVec = std::vector<mpz_class>;

inline ZVec to_zvec(const std::vector<long long>& v) {
  ZVec z;
  for (long long x : v) z.push_back(to_z(x));
  return z;
}

inline ZMatrix to_z(const LMatrix& m) {
  ZMatrix z(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) z(i, j) = nrep::to_z(m(i, j));
  return z;
}

inline LMatrix to_l(const ZMatrix& m) {
  LMatrix l(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) l(i, j) = to_ll(m(i, j));
  return l;
}

namespace detail {

// rows a, b := x*a + y*b, u*a + v*b  (xv - yu = 1)
inline void row_combine(ZMatrix& m, std::size_t a, std::size_t b, const mpz_class& x,
                        const mpz_class& y, const mpz_class& u, const mpz_class& v) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    mpz_class ra = m(a, j), rb = m(b, j);
    m(a, j) = x * ra + y * rb;
    m(b, j) = u * ra + v * rb;
  }
}

inline void row_addmul(ZMatrix& m, std::size_t dst, std::size_t src, const mpz_class& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

inline void row_negate(ZMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

}  // namespace detail

struct HermiteResult {
  ZMatrix H;  ///< row echelon, positive pivots, entries above pivots reduced into [0, pivot)
  ZMatrix U;  ///< unimodular with U * A = H
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Row-style Hermite normal form.
inline HermiteResult hermite(const ZMatrix& A) {
  HermiteResult r{A, ZMatrix::identity(A.rows()), 0, {}};
  ZMatrix& H = r.H;
  ZMatrix& U = r.U;
  std::size_t row = 0;
  for (std::size_t col = 0; col < H.cols() && row < H.rows(); ++col) {
    for (std::size_t i = row + 1; i < H.rows(); ++i) {
      if (H(i, col) == 0) continue;
      mpz_class g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), H(row, col).get_mpz_t(),
                 H(i, col).get_mpz_t());
      mpz_class a = H(row, col) / g, b = H(i, col) / g;
      detail::row_combine(H, row, i, x, y, -b, a);
      detail::row_combine(U, row, i, x, y, -b, a);
    }
    if (H(row, col) == 0) continue;
    if (H(row, col) < 0) {
      detail::row_negate(H, row);
      detail::row_negate(U, row);
    }
    for (std::size_t k = 0; k < row; ++k) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), H(k, col).get_mpz_t(), H(row, col).get_mpz_t());
      if (q == 0) continue;
      detail::row_addmul(H, k, row, q);
      detail::row_addmul(U, k, row, q);
    }
    r.pivots.push_back(col);
    ++row;
  }
  r.rank = row;
  return r;
}

/// Nonzero rows of the Hermite form: the canonical basis of the row lattice.
inline ZMatrix hnf_basis(const ZMatrix& A) {
  auto h = hermite(A);
  ZMatrix B(0, A.cols());
  for (std::size_t i = 0; i < h.rank; ++i) B.append_row(h.H.row(i));
  return B;
}

struct SmithResult {
  ZMatrix U, S, V;  ///< U * A * V = S, U and V unimodular
  std::vector<mpz_class> divisors;  ///< nonzero diagonal, each dividing the next
};

inline SmithResult smith(const ZMatrix& A) {
  SmithResult r{ZMatrix::identity(A.rows()), A, ZMatrix::identity(A.cols()), {}};
  auto is_diag = [](const ZMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (i != j && m(i, j) != 0) return false;
    return true;
  };
  while (true) {
    while (!is_diag(r.S)) {
      auto h = hermite(r.S);
      r.S = h.H;
      r.U = h.U * r.U;
      if (is_diag(r.S)) break;
      auto hc = hermite(r.S.transpose());
      r.S = hc.H.transpose();
      r.V = r.V * hc.U.transpose();
    }
    std::size_t k = std::min(r.S.rows(), r.S.cols());
    bool fixed = true;
    for (std::size_t i = 0; i < k && fixed; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        const mpz_class& a = r.S(i, i);
        const mpz_class& b = r.S(j, j);
        bool bad = (a == 0 && b != 0) || (a != 0 && b % a != 0);
        if (!bad) continue;
        if (a == 0) {
          r.S.swap_rows(i, j);
          r.U.swap_rows(i, j);
          for (std::size_t c = 0; c < r.S.rows(); ++c) std::swap(r.S(c, i), r.S(c, j));
          for (std::size_t c = 0; c < r.V.rows(); ++c) std::swap(r.V(c, i), r.V(c, j));
        } else {
          // diag(a, b) -> diag(g, ab/g) with U = [[x, y], [-b/g, a/g]], V = [[1, -yb/g], [1, xa/g]]
          mpz_class g, x, y;
          mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
          mpz_class ag = a / g, bg = b / g;
          detail::row_combine(r.U, i, j, x, y, -bg, ag);
          mpz_class v01 = -y * bg, v11 = x * ag;
          for (std::size_t c = 0; c < r.V.rows(); ++c) {
            mpz_class ci = r.V(c, i), cj = r.V(c, j);
            r.V(c, i) = ci + cj;
            r.V(c, j) = ci * v01 + cj * v11;
          }
          mpz_class l = a * bg;
          r.S(i, i) = g;
          r.S(j, j) = l;
        }
        fixed = false;
        break;
      }
    if (fixed) break;
  }
  std::size_t k = std::min(r.S.rows(), r.S.cols());
  for (std::size_t i = 0; i < k; ++i) {
    if (r.S(i, i) < 0) {
      detail::row_negate(r.S, i);
      detail::row_negate(r.U, i);
    }
    if (r.S(i, i) != 0) r.divisors.push_back(r.S(i, i));
  }
  return r;
}

/// Basis (as rows) of the saturated lattice {x : A x = 0}.
inline ZMatrix integer_kernel(const ZMatrix& A) {
  auto h = hermite(A.transpose());
  ZMatrix K(0, A.cols());
  for (std::size_t i = h.rank; i < h.U.rows(); ++i) K.append_row(h.U.row(i));
  return hnf_basis(K.rows() ? K : ZMatrix(0, A.cols()));
}

inline std::size_t rank(const ZMatrix& A) { return hermite(A).rank; }

/// Bareiss fraction-free determinant.
inline mpz_class determinant(ZMatrix m) {
  std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Integer coefficients c with c * B = v, when v lies in the row lattice of B (full row rank).
inline std::optional<ZVec> solve_in_lattice(const ZMatrix& B, const ZVec& v) {
  if (v.size() != B.cols()) throw std::invalid_argument("vector length mismatch");
  auto h = hermite(B);
  if (h.rank != B.rows()) throw std::invalid_argument("lattice basis is not of full row rank");
  ZVec rem = v, c(B.rows());
  for (std::size_t i = 0; i < h.rank; ++i) {
    std::size_t p = h.pivots[i];
    for (std::size_t j = 0; j < p; ++j)
      if (rem[j] != 0) return std::nullopt;
    if (rem[p] % h.H(i, p) != 0) return std::nullopt;
    c[i] = rem[p] / h.H(i, p);
    for (std::size_t j = 0; j < rem.size(); ++j) rem[j] -= c[i] * h.H(i, j);
  }
  for (const auto& x : rem)
    if (x != 0) return std::nullopt;
  ZVec out(B.rows());
  for (std::size_t j = 0; j < B.rows(); ++j)
    for (std::size_t i = 0; i < B.rows(); ++i) out[j] += c[i] * h.U(i, j);
  return out;
}

}  // namespace nrep
