#pragma once

#include "nrep/latcoh.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrep {

using ExpVec = std::vector<long long>;
using Perm = std::vector<int>;

inline Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline Perm compose(const Perm& a, const Perm& b) {  // (a∘b)(i) = a(b(i))
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

inline Perm inverse(const Perm& a) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[a[i]] = static_cast<int>(i);
  return c;
}

inline std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = identity_perm(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// (σ·v)_{σ(i)} = v_i
inline ExpVec permute(const Perm& s, const ExpVec& v) {
  ExpVec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[s[i]] = v[i];
  return w;
}

/// Finite diagonal group L / M Z^n, v ↦ diag(ζ_M^{v_1}, …, ζ_M^{v_n}).
class DiagonalGroup {
 public:
  DiagonalGroup() = default;

  static DiagonalGroup from_exponents(int n, long long M, const std::vector<ExpVec>& gens) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    if (M < 1) throw std::invalid_argument("level must be positive");
    ZMatrix A(0, n);
    for (const auto& g : gens) {
      if (static_cast<int>(g.size()) != n) throw std::invalid_argument("exponent vector has wrong length");
      ExpVec r(n);
      for (int i = 0; i < n; ++i) r[i] = mod_floor(g[i], M);
      A.append_row(to_zvec(r));
    }
    for (int i = 0; i < n; ++i) {
      ExpVec e(n, 0);
      e[i] = M;
      A.append_row(to_zvec(e));
    }
    DiagonalGroup d;
    d.n_ = n;
    d.M_ = M;
    d.L_ = hnf_basis(A);
    return d;
  }

  int dim() const { return n_; }
  long long level() const { return M_; }
  /// Hermite basis of L (n x n).
  const ZMatrix& lattice() const { return L_; }

  long long order() const {
    mpz_class Mn = 1;
    for (int i = 0; i < n_; ++i) Mn *= to_z(M_);
    return to_ll(Mn / abs(determinant(L_)));
  }

  /// Rows of the Hermite basis that are nontrivial mod M, reduced into [0, M).
  std::vector<ExpVec> generators() const {
    std::vector<ExpVec> out;
    for (std::size_t i = 0; i < L_.rows(); ++i) {
      ExpVec r(n_);
      bool triv = true;
      for (int j = 0; j < n_; ++j) {
        r[j] = mod_floor(to_ll(L_(i, j)), M_);
        triv = triv && r[j] == 0;
      }
      if (!triv) out.push_back(r);
    }
    return out;
  }

  bool contains(const ExpVec& v) const { return solve_in_lattice(L_, to_zvec(v)).has_value(); }

  DiagonalGroup at_level(long long M2) const {
    if (M2 % M_ != 0) throw std::invalid_argument("target level is not a multiple of the group level");
    DiagonalGroup d;
    d.n_ = n_;
    d.M_ = M2;
    d.L_ = L_;
    mpz_class f = to_z(M2 / M_);
    for (std::size_t i = 0; i < d.L_.rows(); ++i)
      for (int j = 0; j < n_; ++j) d.L_(i, j) *= f;
    return d;  // deliberately not canonicalized: same group, finer level
  }

  DiagonalGroup permuted(const Perm& s) const {
    std::vector<ExpVec> g;
    for (std::size_t i = 0; i < L_.rows(); ++i) {
      ExpVec r(n_);
      for (int j = 0; j < n_; ++j) r[j] = to_ll(L_(i, j));
      g.push_back(permute(s, r));
    }
    return from_exponents(n_, M_, g);
  }

  friend bool operator==(const DiagonalGroup& a, const DiagonalGroup& b) {
    if (a.n_ != b.n_) return false;
    DiagonalGroup x = a.canonical(), y = b.canonical();
    return x.M_ == y.M_ && x.L_ == y.L_;
  }

  /// All exponent vectors in [0, M)^n (for small groups).
  std::vector<ExpVec> elements(std::size_t cap = kDefaultCap) const {
    auto gens = generators();
    auto e = enumerate_group(
        ExpVec(n_, 0), gens,
        [&](const ExpVec& a, const ExpVec& b) {
          ExpVec c(n_);
          for (int i = 0; i < n_; ++i) c[i] = mod_floor(a[i] + b[i], M_);
          return c;
        },
        [](const ExpVec& v) {
          std::size_t h = 0;
          for (long long x : v) hash_combine(h, static_cast<std::size_t>(x));
          return h;
        },
        cap);
    return e.elements;
  }

  /// Same group at its smallest level.
  DiagonalGroup canonical() const {
    DiagonalGroup d = *this;
    d.L_ = hnf_basis(d.L_);
    d.canonicalize();
    return d;
  }

  /// Order of the subgroup of scalar matrices.
  long long scalar_order() const {
    for (long long t : divisors(M_))
      if (contains(ExpVec(n_, t))) return M_ / t;
    return 1;
  }

 private:
  void canonicalize() {
    mpz_class g = to_z(M_);
    for (const auto& x : L_.data()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1) {
      for (std::size_t i = 0; i < L_.rows(); ++i)
        for (int j = 0; j < n_; ++j) L_(i, j) /= g;
      M_ /= to_ll(g);
    }
  }

  int n_ = 1;
  long long M_ = 1;
  ZMatrix L_ = ZMatrix::identity(1);
};

/// Diagonal subgroup of PGL_n: lattice L' ∋ (1,…,1) at level M, group L' / (M Z^n + Z·(1,…,1)).
class ProjDiagonalGroup {
 public:
  ProjDiagonalGroup() = default;

  static ProjDiagonalGroup from_exponents(int n, long long M, std::vector<ExpVec> gens) {
    gens.push_back(ExpVec(n, 1));
    ProjDiagonalGroup p;
    p.lift_ = DiagonalGroup::from_exponents(n, M, gens);
    return p;
  }
  /// Image of a diagonal group in PGL_n.
  static ProjDiagonalGroup from_diagonal(const DiagonalGroup& D) {
    return from_exponents(D.dim(), D.level(), D.generators());
  }

  int dim() const { return lift_.dim(); }
  long long level() const { return lift_.level(); }
  const ZMatrix& lattice() const { return lift_.lattice(); }
  /// The lattice viewed as a diagonal group (the preimage of this group in μ_M · diagonal).
  const DiagonalGroup& lattice_group() const { return lift_; }
  long long order() const { return lift_.order() / lift_.level(); }
  std::vector<ExpVec> generators() const { return lift_.generators(); }

  ProjDiagonalGroup at_level(long long M2) const {
    return from_exponents(dim(), M2, lift_.at_level(M2).generators());
  }
  ProjDiagonalGroup permuted(const Perm& s) const {
    ProjDiagonalGroup p;
    p.lift_ = lift_.permuted(s);
    return p;
  }
  bool contains(const ExpVec& v) const { return lift_.contains(v); }

  friend bool operator==(const ProjDiagonalGroup& a, const ProjDiagonalGroup& b) {
    if (a.dim() != b.dim()) return false;
    long long L = lcm_ll(a.level(), b.level());
    return a.at_level(L).lift_.lattice() == b.at_level(L).lift_.lattice();
  }

 private:
  DiagonalGroup lift_;
};

inline ProjDiagonalGroup projective_diag(const DiagonalGroup& D) { return ProjDiagonalGroup::from_diagonal(D); }

/// σ in `allowed` (default: all of S_n) with σ·a = b.
template <class G>
std::optional<Perm> equals_up_to_permutation(const G& a, const G& b, const std::vector<Perm>* allowed = nullptr) {
  if (a.dim() != b.dim()) return std::nullopt;
  long long L = lcm_ll(a.level(), b.level());
  G x = a.at_level(L), y = b.at_level(L);
  std::vector<Perm> all;
  if (!allowed) {
    all = all_perms(a.dim());
    allowed = &all;
  }
  for (const auto& s : *allowed)
    if (x.permuted(s) == y) return s;
  return std::nullopt;
}

inline bool axis_characters_distinct(const DiagonalGroup& D) {
  int n = D.dim();
  auto gens = D.generators();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool differ = false;
      for (const auto& g : gens) differ = differ || mod_floor(g[i] - g[j], D.level()) != 0;
      if (!differ) return false;
    }
  return true;
}

inline std::vector<Perm> normalizer_perms(const DiagonalGroup& D) {
  if (!axis_characters_distinct(D))
    throw std::invalid_argument("normalizer_perms: axis characters are not distinct "
                                "(eigenspaces are not all 1-dimensional)");
  std::vector<Perm> S;
  for (const auto& s : all_perms(D.dim()))
    if (D.permuted(s) == D) S.push_back(s);
  return S;
}

inline std::vector<LMatrix> perm_matrices(const std::vector<Perm>& S) {
  std::vector<LMatrix> out;
  for (const auto& s : S)
    if (s != identity_perm(static_cast<int>(s.size()))) out.push_back(permutation_matrix(s));
  return out;
}

/// X = {u : u·v ≡ 0 mod M for all v in L}, with the given permutations acting.
inline GLattice character_lattice(const DiagonalGroup& D, const std::vector<Perm>& S = {}) {
  int n = D.dim();
  const ZMatrix& B = D.lattice();
  // M * B^{-1} by Gauss-Jordan over Q
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = B(i, j);
    a[i][n + i] = to_z(D.level());
  }
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[p], a[c]);
    mpq_class inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (int j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  ZMatrix X(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const mpq_class& q = a[j][n + i];  // transpose
      if (q.get_den() != 1) throw std::logic_error("character lattice is not integral");
      X(i, j) = q.get_num();
    }
  return GLattice(X, perm_matrices(S));
}

/// Block-diagonal family data: block sizes, weights, and the projective diagonal target.
struct FamilySpec {
  std::vector<int> blocks;
  std::vector<long long> weights;
  ProjDiagonalGroup target;
};

/// Diagonal matrices whose class lies in the target and whose weighted block determinant is 1.
inline DiagonalGroup sl_preimage(const FamilySpec& f) {
  int n = f.target.dim();
  if (f.blocks.size() != f.weights.size()) throw std::invalid_argument("sl_preimage: blocks and weights differ in length");
  int total = 0;
  for (int b : f.blocks) {
    if (b < 1) throw std::invalid_argument("sl_preimage: block sizes must be positive");
    total += b;
  }
  if (total != n) throw std::invalid_argument("sl_preimage: block sizes do not sum to the dimension");
  long long w = 0;
  for (std::size_t i = 0; i < f.blocks.size(); ++i) w += f.weights[i] * f.blocks[i];
  if (w == 0) throw std::invalid_argument("sl_preimage: infinite preimage (weight degree is zero)");
  long long aw = w < 0 ? -w : w, sg = w < 0 ? -1 : 1;
  long long Mbar = f.target.level();
  std::vector<int> block_of;
  for (std::size_t i = 0; i < f.blocks.size(); ++i)
    for (int k = 0; k < f.blocks[i]; ++k) block_of.push_back(static_cast<int>(i));
  std::vector<ExpVec> gens;
  const ZMatrix& Lb = f.target.lattice();
  for (std::size_t r = 0; r < Lb.rows(); ++r) {
    ExpVec v(n);
    long long s = 0;
    for (int j = 0; j < n; ++j) {
      v[j] = to_ll(Lb(r, j));
      s += f.weights[block_of[j]] * v[j];
    }
    ExpVec lift(n);
    for (int j = 0; j < n; ++j) lift[j] = aw * v[j] - sg * s;
    gens.push_back(lift);
  }
  gens.push_back(ExpVec(n, Mbar));
  return DiagonalGroup::from_exponents(n, Mbar * aw, gens);
}

}  // namespace nrep
