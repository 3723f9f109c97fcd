#pragma once

#include "nrep/cyclo.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrep {

/// Square matrix over Q(zeta_N); all entries share one level.
class CycMatrix {
 public:
  CycMatrix() = default;
  CycMatrix(int dim, int level) : dim_(dim), level_(level), a_(dim * dim, CycNum(level)) {}

  static CycMatrix identity(int dim, int level = 1) { return scalar(dim, CycNum(level, 1)); }
  static CycMatrix scalar(int dim, const CycNum& s) {
    CycMatrix m(dim, s.level());
    for (int i = 0; i < dim; ++i) m.a_[i * dim + i] = s;
    return m;
  }
  static CycMatrix diagonal(const std::vector<CycNum>& d) {
    int L = 1;
    for (const auto& x : d) L = static_cast<int>(lcm_ll(L, x.level()));
    CycMatrix m(static_cast<int>(d.size()), L);
    for (std::size_t i = 0; i < d.size(); ++i) m.a_[i * d.size() + i] = d[i].at_level(L);
    return m;
  }
  /// diag(zeta_M^{e_0}, ..., zeta_M^{e_{n-1}})
  static CycMatrix diagonal_roots(long long M, const std::vector<long long>& e, int level = 1) {
    std::vector<CycNum> d;
    for (long long x : e) d.push_back(CycNum::zeta(M, x, level));
    return diagonal(d);
  }
  /// Permutation matrix with P e_i = e_{perm[i]}.
  static CycMatrix permutation(const std::vector<int>& perm, int level = 1) {
    int n = static_cast<int>(perm.size());
    CycMatrix m(n, level);
    for (int i = 0; i < n; ++i) m.at(perm[i], i) = CycNum(level, 1);
    return m;
  }
  static CycMatrix from_rows(const std::vector<std::vector<CycNum>>& rows) {
    int n = static_cast<int>(rows.size());
    int L = 1;
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != n) throw std::invalid_argument("matrix is not square");
      for (const auto& x : r) L = static_cast<int>(lcm_ll(L, x.level()));
    }
    CycMatrix m(n, L);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j].at_level(L);
    return m;
  }
  static CycMatrix from_columns(const std::vector<std::vector<CycNum>>& cols) {
    return from_rows(cols).transpose();
  }

  int dim() const { return dim_; }
  int level() const { return level_; }
  CycNum& at(int i, int j) { return a_[i * dim_ + j]; }
  const CycNum& at(int i, int j) const { return a_[i * dim_ + j]; }
  std::vector<CycNum> column(int j) const {
    std::vector<CycNum> c;
    for (int i = 0; i < dim_; ++i) c.push_back(at(i, j));
    return c;
  }

  CycMatrix at_level(int L) const {
    if (L == level_) return *this;
    CycMatrix m(dim_, L);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i].at_level(L);
    return m;
  }

  CycMatrix transpose() const {
    CycMatrix t(dim_, level_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend CycMatrix operator*(const CycMatrix& a, const CycMatrix& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("matrix dimension mismatch");
    if (a.level_ != b.level_) {
      int L = static_cast<int>(lcm_ll(a.level_, b.level_));
      return a.at_level(L) * b.at_level(L);
    }
    CycMatrix c(a.dim_, a.level_);
    for (int i = 0; i < a.dim_; ++i)
      for (int k = 0; k < a.dim_; ++k) {
        const CycNum& x = a.at(i, k);
        if (x.is_zero()) continue;
        for (int j = 0; j < a.dim_; ++j) {
          const CycNum& y = b.at(k, j);
          if (!y.is_zero()) c.at(i, j) += x * y;
        }
      }
    return c;
  }
  friend CycMatrix operator*(const CycNum& s, const CycMatrix& m) {
    int L = static_cast<int>(lcm_ll(s.level(), m.level_));
    CycMatrix r = m.at_level(L);
    CycNum t = s.at_level(L);
    for (auto& x : r.a_) x = t * x;
    return r;
  }
  friend CycMatrix operator-(const CycMatrix& a, const CycMatrix& b) {
    if (a.level_ != b.level_) {
      int L = static_cast<int>(lcm_ll(a.level_, b.level_));
      return a.at_level(L) - b.at_level(L);
    }
    CycMatrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
    return c;
  }
  friend bool operator==(const CycMatrix& a, const CycMatrix& b) {
    if (a.dim_ != b.dim_) return false;
    if (a.level_ == b.level_) return a.a_ == b.a_;
    int L = static_cast<int>(lcm_ll(a.level_, b.level_));
    return a.at_level(L).a_ == b.at_level(L).a_;
  }

  bool is_identity() const { return *this == identity(dim_, level_); }
  std::optional<CycNum> scalar_value() const {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        if (i != j && !at(i, j).is_zero()) return std::nullopt;
    for (int i = 1; i < dim_; ++i)
      if (!(at(i, i) == at(0, 0))) return std::nullopt;
    return at(0, 0);
  }
  bool is_scalar() const { return scalar_value().has_value(); }
  bool is_diagonal() const {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        if (i != j && !at(i, j).is_zero()) return false;
    return true;
  }

  CycNum trace() const {
    CycNum t(level_);
    for (int i = 0; i < dim_; ++i) t += at(i, i);
    return t;
  }

  CycNum det() const {
    if (dim_ == 1) return at(0, 0);
    if (dim_ == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    if (dim_ == 3)
      return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
             at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
             at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    CycMatrix m = *this;
    CycNum d(level_, 1);
    for (int k = 0; k < dim_; ++k) {
      int p = k;
      while (p < dim_ && m.at(p, k).is_zero()) ++p;
      if (p == dim_) return CycNum(level_);
      if (p != k) {
        for (int j = 0; j < dim_; ++j) std::swap(m.at(p, j), m.at(k, j));
        d = -d;
      }
      d *= m.at(k, k);
      CycNum inv = m.at(k, k).inverse();
      for (int i = k + 1; i < dim_; ++i) {
        if (m.at(i, k).is_zero()) continue;
        CycNum f = m.at(i, k) * inv;
        for (int j = k; j < dim_; ++j) m.at(i, j) -= f * m.at(k, j);
      }
    }
    return d;
  }

  /// Reduced row echelon form; returns pivot columns.
  static std::vector<int> rref(std::vector<std::vector<CycNum>>& rows, int ncols) {
    std::vector<int> piv;
    std::size_t r = 0;
    for (int c = 0; c < ncols && r < rows.size(); ++c) {
      std::size_t p = r;
      while (p < rows.size() && rows[p][c].is_zero()) ++p;
      if (p == rows.size()) continue;
      std::swap(rows[p], rows[r]);
      CycNum inv = rows[r][c].inverse();
      for (auto& x : rows[r]) x = x * inv;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == r || rows[i][c].is_zero()) continue;
        CycNum f = rows[i][c];
        for (int j = c; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
      }
      piv.push_back(c);
      ++r;
    }
    rows.resize(r);
    return piv;
  }

  int rank() const {
    std::vector<std::vector<CycNum>> rows;
    for (int i = 0; i < dim_; ++i) {
      std::vector<CycNum> r;
      for (int j = 0; j < dim_; ++j) r.push_back(at(i, j));
      rows.push_back(r);
    }
    return static_cast<int>(rref(rows, dim_).size());
  }

  /// Basis of the right kernel {x : A x = 0}, in reduced echelon form (vectors as columns).
  std::vector<std::vector<CycNum>> kernel() const {
    std::vector<std::vector<CycNum>> rows;
    for (int i = 0; i < dim_; ++i) {
      std::vector<CycNum> r;
      for (int j = 0; j < dim_; ++j) r.push_back(at(i, j));
      rows.push_back(r);
    }
    auto piv = rref(rows, dim_);
    std::vector<bool> is_piv(dim_, false);
    for (int p : piv) is_piv[p] = true;
    std::vector<std::vector<CycNum>> basis;
    for (int f = 0; f < dim_; ++f) {
      if (is_piv[f]) continue;
      std::vector<CycNum> v(dim_, CycNum(level_));
      v[f] = CycNum(level_, 1);
      for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -rows[i][f];
      basis.push_back(v);
    }
    return basis;
  }

  CycMatrix inverse() const {
    std::vector<std::vector<CycNum>> rows;
    for (int i = 0; i < dim_; ++i) {
      std::vector<CycNum> r;
      for (int j = 0; j < dim_; ++j) r.push_back(at(i, j));
      for (int j = 0; j < dim_; ++j) r.push_back(CycNum(level_, i == j ? 1 : 0));
      rows.push_back(r);
    }
    auto piv = rref(rows, 2 * dim_);
    if (static_cast<int>(piv.size()) < dim_ || piv[dim_ - 1] != dim_ - 1)
      throw std::domain_error("matrix is singular");
    CycMatrix inv(dim_, level_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) inv.at(i, j) = rows[i][dim_ + j];
    return inv;
  }

  std::vector<CycNum> apply(const std::vector<CycNum>& v) const {
    std::vector<CycNum> out(dim_, CycNum(level_));
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        if (!at(i, j).is_zero() && !v[j].is_zero()) out[i] += at(i, j) * v[j];
    return out;
  }

  /// Projective normal form: divide by the first nonzero entry (row-major).
  CycMatrix projective_normalized() const {
    for (const auto& x : a_)
      if (!x.is_zero()) {
        if (x.is_one()) return *this;
        CycNum inv = x.inverse();
        CycMatrix r = *this;
        for (auto& y : r.a_) y = y * inv;
        return r.at_level(level_);
      }
    throw std::domain_error("zero matrix has no projective class");
  }

  std::vector<std::vector<std::string>> entry_strings() const {
    std::vector<std::vector<std::string>> out(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) out[i].push_back(at(i, j).str());
    return out;
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(dim_);
    for (const auto& x : a_) hash_combine(h, x.hash());
    return h;
  }

  friend std::ostream& operator<<(std::ostream& os, const CycMatrix& m) {
    os << "[";
    for (int i = 0; i < m.dim_; ++i) {
      os << (i ? "; " : "");
      for (int j = 0; j < m.dim_; ++j) os << (j ? ", " : "") << m.at(i, j);
    }
    return os << "]";
  }

 private:
  int dim_ = 0;
  int level_ = 1;
  std::vector<CycNum> a_;
};

struct CycMatrixHash {
  std::size_t operator()(const CycMatrix& m) const { return m.hash(); }
};

}  // namespace nrep
