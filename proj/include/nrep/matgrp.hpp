#pragma once

#include "nrep/cycmat.hpp"
#include "nrep/diaggrp.hpp"
#include "nrep/group.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace nrep {

using CycVec = std::vector<CycNum>;

/// Finite subgroup of GL_n(Q(ζ_N)), fully enumerated.
class MatrixGroup {
 public:
  MatrixGroup() = default;

  static MatrixGroup closure(const std::vector<CycMatrix>& gens, std::size_t cap = kDefaultCap, int dim = 0) {
    if (gens.empty() && dim < 1) throw std::invalid_argument("closure: empty generator list needs a dimension");
    int n = gens.empty() ? dim : gens[0].dim();
    int L = 1;
    for (const auto& g : gens) {
      if (g.dim() != n) throw std::invalid_argument("closure: generators have different dimensions");
      L = static_cast<int>(lcm_ll(L, g.level()));
    }
    MatrixGroup G;
    G.dim_ = n;
    G.level_ = L;
    for (const auto& g : gens) {
      if (g.det().is_zero()) throw std::invalid_argument("closure: generator is not invertible");
      G.gens_.push_back(g.at_level(L));
    }
    auto e = enumerate_group(
        CycMatrix::identity(n, L), G.gens_, [](const CycMatrix& a, const CycMatrix& b) { return a * b; },
        CycMatrixHash{}, cap);
    G.elems_ = std::move(e.elements);
    G.table_ = std::move(e.table);
    for (std::size_t i = 0; i < G.elems_.size(); ++i) G.index_.emplace(G.elems_[i].hash(), static_cast<int>(i));
    return G;
  }

  int dim() const { return dim_; }
  int level() const { return level_; }
  std::size_t order() const { return elems_.size(); }
  const std::vector<CycMatrix>& generators() const { return gens_; }
  const std::vector<CycMatrix>& elements() const { return elems_; }
  const CycMatrix& element(int i) const { return elems_[i]; }
  const GroupTable& table() const { return table_; }
  bool is_abelian() const { return table_.is_abelian(); }
  long long exponent() const { return table_.exponent(); }

  std::optional<int> index_of(const CycMatrix& m) const {
    CycMatrix x = m.level() == level_ ? m : m.at_level(static_cast<int>(lcm_ll(level_, m.level())));
    if (x.level() != level_) {
      // an element of this group is representable at level_; otherwise it is not a member
      for (const auto& e : elems_)
        if (e == x) return static_cast<int>(&e - elems_.data());
      return std::nullopt;
    }
    auto [lo, hi] = index_.equal_range(x.hash());
    for (auto it = lo; it != hi; ++it)
      if (elems_[it->second] == x) return it->second;
    return std::nullopt;
  }
  bool contains(const CycMatrix& m) const { return index_of(m).has_value(); }

  /// Same element set (levels harmonized).
  bool same_elements(const MatrixGroup& o) const {
    if (order() != o.order() || dim_ != o.dim_) return false;
    for (const auto& e : o.elems_)
      if (!contains(e)) return false;
    return true;
  }

  MatrixGroup subgroup(const std::vector<int>& element_indices) const {
    std::vector<CycMatrix> g;
    for (int i : table_.generating_set(element_indices)) g.push_back(elems_[i]);
    return closure(g, std::max<std::size_t>(element_indices.size(), 1), dim_);
  }

  MatrixGroup at_level(int L) const {
    std::vector<CycMatrix> g;
    for (const auto& x : gens_) g.push_back(x.at_level(L));
    return closure(g, order(), dim_).lifted_identity(L);
  }

 private:
  MatrixGroup lifted_identity(int L) {
    if (level_ != L) {
      level_ = L;
      for (auto& e : elems_) e = e.at_level(L);
      index_.clear();
      for (std::size_t i = 0; i < elems_.size(); ++i) index_.emplace(elems_[i].hash(), static_cast<int>(i));
    }
    return *this;
  }

  int dim_ = 1;
  int level_ = 1;
  std::vector<CycMatrix> gens_;
  std::vector<CycMatrix> elems_;
  GroupTable table_;
  std::unordered_multimap<std::size_t, int> index_;
};

inline MatrixGroup closure(const std::vector<CycMatrix>& gens, std::size_t cap = kDefaultCap, int dim = 0) {
  return MatrixGroup::closure(gens, cap, dim);
}

// ---------------------------------------------------------------------------
// linear algebra helpers over Q(ζ)

/// Right kernel of an m x k matrix given by rows, as reduced-echelon basis vectors.
inline std::vector<CycVec> cyc_kernel(std::vector<CycVec> rows, int k, int level) {
  auto piv = CycMatrix::rref(rows, k);
  std::vector<bool> is_piv(k, false);
  for (int p : piv) is_piv[p] = true;
  std::vector<CycVec> basis;
  for (int f = 0; f < k; ++f) {
    if (is_piv[f]) continue;
    CycVec v(k, CycNum(level));
    v[f] = CycNum(level, 1);
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -rows[i][f];
    basis.push_back(v);
  }
  return basis;
}

inline CycMatrix conjugate(const CycMatrix& g, const CycMatrix& T, const CycMatrix& Tinv) { return Tinv * g * T; }

inline std::vector<CycMatrix> conjugate_all(const std::vector<CycMatrix>& gs, const CycMatrix& T) {
  CycMatrix Ti = T.inverse();
  std::vector<CycMatrix> out;
  for (const auto& g : gs) out.push_back(Ti * g * T);
  return out;
}

/// diag(ζ_M^{v}) for each generator of a diagonal group.
inline std::vector<CycMatrix> diagonal_matrices(const DiagonalGroup& D) {
  std::vector<CycMatrix> out;
  for (const auto& v : D.generators()) out.push_back(CycMatrix::diagonal_roots(D.level(), v));
  return out;
}

inline std::vector<CycMatrix> diagonal_matrices(const ProjDiagonalGroup& D) {
  std::vector<CycMatrix> out;
  for (const auto& v : D.generators()) out.push_back(CycMatrix::diagonal_roots(D.level(), v));
  return out;
}

// ---------------------------------------------------------------------------
// element invariants

inline long long matrix_order(const CycMatrix& m, std::size_t cap = kDefaultCap) {
  if (m.det().is_zero()) throw std::invalid_argument("matrix is not invertible");
  CycMatrix x = m;
  for (std::size_t k = 1; k <= cap; ++k) {
    if (x.is_identity()) return static_cast<long long>(k);
    x = x * m;
  }
  throw std::invalid_argument("matrix order exceeds cap of " + std::to_string(cap) + " (infinite order?)");
}

struct Eigenspace {
  RootOfUnity value;
  std::vector<CycVec> basis;  ///< reduced echelon vectors
};

/// Eigenspaces of a finite-order matrix, sorted by (order, exponent) of the eigenvalue.
inline std::vector<Eigenspace> eigenspaces(const CycMatrix& m, long long order) {
  int L = static_cast<int>(lcm_ll(m.level(), order));
  CycMatrix x = m.at_level(L);
  std::vector<Eigenspace> out;
  for (long long k = 0; k < order; ++k) {
    CycNum lam = CycNum::zeta(order, k, L);
    auto ker = (x - CycMatrix::scalar(m.dim(), lam)).kernel();
    if (ker.empty()) continue;
    long long g = std::gcd(k, order);
    out.push_back({RootOfUnity{order / g, k / g}, ker});
  }
  std::sort(out.begin(), out.end(), [](const Eigenspace& a, const Eigenspace& b) {
    return std::pair(a.value.order, a.value.exponent) < std::pair(b.value.order, b.value.exponent);
  });
  std::size_t total = 0;
  for (const auto& e : out) total += e.basis.size();
  if (total != static_cast<std::size_t>(m.dim())) throw std::logic_error("finite-order matrix is not semisimple");
  return out;
}

struct ElementInvariants {
  long long order = 1;
  CycNum det;
  std::vector<RootOfUnity> eigenvalues;  ///< with multiplicity, sorted by (order, exponent)
  bool is_scalar = false;
  bool is_pseudo_reflection = false;
};

inline ElementInvariants element_invariants(const CycMatrix& m, std::size_t cap = kDefaultCap) {
  ElementInvariants inv;
  inv.order = matrix_order(m, cap);
  inv.det = m.det();
  for (const auto& e : eigenspaces(m, inv.order))
    for (std::size_t i = 0; i < e.basis.size(); ++i) inv.eigenvalues.push_back(e.value);
  inv.is_scalar = m.is_scalar();
  int non_one = 0;
  for (const auto& v : inv.eigenvalues) non_one += v.order != 1;
  inv.is_pseudo_reflection = non_one == 1;
  return inv;
}

// ---------------------------------------------------------------------------
// scalars and projective images

struct ScalarSubgroup {
  long long order = 1;
  CycNum generator;           ///< ζ_c
  std::vector<int> elements;  ///< indices in the group
};

inline ScalarSubgroup scalar_subgroup(const MatrixGroup& G) {
  ScalarSubgroup s;
  for (std::size_t i = 0; i < G.order(); ++i)
    if (G.element(static_cast<int>(i)).is_scalar()) s.elements.push_back(static_cast<int>(i));
  s.order = static_cast<long long>(s.elements.size());
  s.generator = CycNum::zeta(s.order, 1, G.level());
  return s;
}

/// Image of a finite matrix group in PGL_n, as cosets of the scalar subgroup.
struct ProjGroup {
  MatrixGroup lift;
  std::vector<int> kernel;
  std::vector<int> label;  ///< lift element -> coset
  std::vector<int> reps;   ///< coset -> lift element
  std::vector<CycMatrix> normalized;  ///< coset -> projectively normalized representative
  GroupTable table;

  int dim() const { return lift.dim(); }
  std::size_t order() const { return reps.size(); }
  const CycMatrix& rep(int c) const { return lift.element(reps[c]); }
  const std::vector<CycMatrix>& representatives() const { return normalized; }
  bool is_cyclic() const { return table.is_cyclic(); }
  bool is_abelian() const { return table.is_subgroup_abelian(table.all_elements()); }
  /// Coset of a matrix (any scalar multiple of a lift element), if it lies in the group.
  std::optional<int> coset_of(const CycMatrix& m) const {
    CycMatrix x = m.projective_normalized();
    if (x.level() != lift.level()) x = x.at_level(static_cast<int>(lcm_ll(x.level(), lift.level())));
    for (std::size_t c = 0; c < normalized.size(); ++c)
      if (normalized[c] == x) return static_cast<int>(c);
    return std::nullopt;
  }
};

inline ProjGroup projective_image(const MatrixGroup& G) {
  ProjGroup P;
  P.lift = G;
  P.kernel = scalar_subgroup(G).elements;
  auto [t, label] = G.table().quotient(P.kernel);
  P.table = std::move(t);
  P.label = std::move(label);
  P.reps.assign(P.table.size(), -1);
  for (std::size_t g = 0; g < G.order(); ++g)
    if (P.reps[P.label[g]] < 0) P.reps[P.label[g]] = static_cast<int>(g);
  for (int r : P.reps) P.normalized.push_back(G.element(r).projective_normalized());
  return P;
}

/// Equality of two sets of matrices modulo scalars.
inline bool same_projective_set(const std::vector<CycMatrix>& a, const std::vector<CycMatrix>& b) {
  int L = 1;
  for (const auto& x : a) L = static_cast<int>(lcm_ll(L, x.level()));
  for (const auto& x : b) L = static_cast<int>(lcm_ll(L, x.level()));
  std::unordered_multimap<std::size_t, CycMatrix> set;
  std::size_t na = 0;
  for (const auto& x : a) {
    CycMatrix y = x.at_level(L).projective_normalized();
    bool dup = false;
    auto [lo, hi] = set.equal_range(y.hash());
    for (auto it = lo; it != hi; ++it) dup = dup || it->second == y;
    if (!dup) {
      set.emplace(y.hash(), y);
      ++na;
    }
  }
  std::size_t nb = 0;
  std::vector<CycMatrix> seen_b;
  for (const auto& x : b) {
    CycMatrix y = x.at_level(L).projective_normalized();
    auto [lo, hi] = set.equal_range(y.hash());
    bool found = false;
    for (auto it = lo; it != hi; ++it) found = found || it->second == y;
    if (!found) return false;
    if (std::find(seen_b.begin(), seen_b.end(), y) == seen_b.end()) {
      seen_b.push_back(y);
      ++nb;
    }
  }
  return na == nb;
}

inline bool same_element_set(const std::vector<CycMatrix>& a, const std::vector<CycMatrix>& b) {
  if (a.size() != b.size()) return false;
  int L = 1;
  for (const auto& x : a) L = static_cast<int>(lcm_ll(L, x.level()));
  for (const auto& x : b) L = static_cast<int>(lcm_ll(L, x.level()));
  std::unordered_multimap<std::size_t, CycMatrix> set;
  for (const auto& x : a) {
    CycMatrix y = x.at_level(L);
    set.emplace(y.hash(), y);
  }
  for (const auto& x : b) {
    CycMatrix y = x.at_level(L);
    auto [lo, hi] = set.equal_range(y.hash());
    bool found = false;
    for (auto it = lo; it != hi; ++it) found = found || it->second == y;
    if (!found) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// simultaneous diagonalization

struct Diagonalization {
  CycMatrix P;                       ///< P^{-1} g P diagonal for all g
  DiagonalGroup D;
  std::vector<ExpVec> generator_exponents;  ///< per generator, at level D-level before canonicalization
  long long exponent_level = 1;
};

inline Diagonalization simultaneous_diagonalize(const MatrixGroup& G) {
  if (!G.is_abelian()) throw std::invalid_argument("simultaneous_diagonalize: group is not abelian");
  int n = G.dim();
  long long E = G.exponent();
  int L = static_cast<int>(lcm_ll(G.level(), E));
  struct Space {
    std::vector<CycVec> basis;  // columns
    std::vector<RootOfUnity> chars;
  };
  std::vector<Space> spaces;
  {
    Space all;
    for (int i = 0; i < n; ++i) {
      CycVec e(n, CycNum(L));
      e[i] = CycNum(L, 1);
      all.basis.push_back(e);
    }
    spaces.push_back(all);
  }
  const auto& gens = G.generators();
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    CycMatrix g = gens[gi].at_level(L);
    long long o = G.table().element_order(G.table().generator(gi));
    std::vector<Space> next;
    for (const auto& W : spaces) {
      std::size_t k = W.basis.size();
      std::vector<CycVec> gw;
      for (const auto& w : W.basis) gw.push_back(g.apply(w));
      for (long long j = 0; j < o; ++j) {
        CycNum lam = CycNum::zeta(o, j, L);
        // rows of (g - λ) W, an n x k matrix
        std::vector<CycVec> rows(n, CycVec(k, CycNum(L)));
        for (int r = 0; r < n; ++r)
          for (std::size_t c = 0; c < k; ++c) rows[r][c] = gw[c][r] - lam * W.basis[c][r];
        auto ker = cyc_kernel(rows, static_cast<int>(k), L);
        if (ker.empty()) continue;
        Space S;
        S.chars = W.chars;
        long long gg = std::gcd(j, o);
        S.chars.push_back(RootOfUnity{o / gg, j / gg});
        for (const auto& y : ker) {
          CycVec v(n, CycNum(L));
          for (std::size_t c = 0; c < k; ++c)
            if (!y[c].is_zero())
              for (int r = 0; r < n; ++r) v[r] += y[c] * W.basis[c][r];
          S.basis.push_back(v);
        }
        next.push_back(S);
      }
    }
    spaces = std::move(next);
  }
  struct Column {
    std::vector<std::pair<long long, long long>> key;
    int pivot;
    CycVec v;
    std::vector<RootOfUnity> chars;
  };
  std::vector<Column> cols;
  for (auto& S : spaces) {
    std::vector<CycVec> rows = S.basis;
    auto piv = CycMatrix::rref(rows, n);
    std::vector<std::pair<long long, long long>> key;
    for (const auto& c : S.chars) key.emplace_back(c.order, c.exponent);
    for (std::size_t i = 0; i < rows.size(); ++i) cols.push_back({key, piv[i], rows[i], S.chars});
  }
  if (static_cast<int>(cols.size()) != n) throw std::logic_error("simultaneous_diagonalize: not diagonalizable");
  std::stable_sort(cols.begin(), cols.end(), [](const Column& a, const Column& b) {
    return std::tie(a.key, a.pivot) < std::tie(b.key, b.pivot);
  });
  Diagonalization out;
  std::vector<CycVec> pc;
  for (const auto& c : cols) pc.push_back(c.v);
  out.P = CycMatrix::from_columns(pc);
  out.exponent_level = E;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    ExpVec v(n);
    for (int c = 0; c < n; ++c) {
      const auto& ch = cols[c].chars[gi];
      v[c] = ch.exponent * (E / ch.order);
    }
    out.generator_exponents.push_back(v);
  }
  out.D = DiagonalGroup::from_exponents(n, E, out.generator_exponents);
  CycMatrix Pi = out.P.inverse();
  for (const auto& g : gens)
    if (!(Pi * g * out.P).is_diagonal()) throw std::logic_error("simultaneous_diagonalize: check failed");
  return out;
}

// ---------------------------------------------------------------------------

inline MatrixGroup sylow(const MatrixGroup& G, long long p) {
  return G.subgroup(G.table().sylow(p));
}

struct PseudoReflectionAnalysis {
  bool has_any = false;
  std::vector<int> reflections;  ///< element indices
  std::size_t subgroup_order = 1;
  bool generates_whole_group = false;
};

inline PseudoReflectionAnalysis pseudo_reflection_analysis(const MatrixGroup& G) {
  PseudoReflectionAnalysis a;
  CycMatrix I = CycMatrix::identity(G.dim(), G.level());
  for (std::size_t i = 1; i < G.order(); ++i)
    if ((G.element(static_cast<int>(i)) - I).rank() == 1) a.reflections.push_back(static_cast<int>(i));
  a.has_any = !a.reflections.empty();
  a.subgroup_order = G.table().subgroup(a.reflections).size();
  a.generates_whole_group = a.subgroup_order == G.order();
  return a;
}

}  // namespace nrep
