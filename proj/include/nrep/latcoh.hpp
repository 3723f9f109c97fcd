#pragma once

#include "nrep/group.hpp"
#include "nrep/intmat.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrep {

struct LMatrixHash {
  std::size_t operator()(const LMatrix& m) const {
    std::size_t h = m.rows();
    for (long long x : m.data()) hash_combine(h, static_cast<std::size_t>(x));
    return h;
  }
};

/// Finite group of integer matrices with its multiplication table.
struct IntGroup {
  std::vector<LMatrix> generators;
  std::vector<LMatrix> elements;
  GroupTable table;

  static IntGroup generate(std::size_t n, const std::vector<LMatrix>& gens, std::size_t cap = kDefaultCap) {
    for (const auto& g : gens)
      if (g.rows() != n || g.cols() != n) throw std::invalid_argument("action matrix has wrong size");
    auto e = enumerate_group(
        LMatrix::identity(n), gens, [](const LMatrix& a, const LMatrix& b) { return a * b; },
        LMatrixHash{}, cap);
    return IntGroup{gens, std::move(e.elements), std::move(e.table)};
  }
  std::size_t order() const { return elements.size(); }
};

inline std::vector<int> perm_of_matrix(const LMatrix& P) {
  std::vector<int> perm(P.cols(), -1);
  for (std::size_t j = 0; j < P.cols(); ++j)
    for (std::size_t i = 0; i < P.rows(); ++i)
      if (P(i, j) != 0) {
        if (P(i, j) != 1 || perm[j] >= 0) return {};
        perm[j] = static_cast<int>(i);
      }
  for (int x : perm)
    if (x < 0) return {};
  return perm;
}

/// P e_i = e_{perm[i]}
inline LMatrix permutation_matrix(const std::vector<int>& perm) {
  LMatrix P(perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) P(perm[i], i) = 1;
  return P;
}

/// Sublattice M ⊆ Z^n (rows of `basis`) with a finite group acting on Z^n by integer matrices.
class GLattice {
 public:
  GLattice() = default;
  GLattice(const ZMatrix& basis, std::vector<LMatrix> action) : action_(std::move(action)) {
    basis_ = hnf_basis(basis);
    n_ = basis.cols();
    if (!action_.empty() && action_[0].rows() != n_)
      throw std::invalid_argument("action matrices do not match the lattice dimension");
    for (const auto& g : action_) coord_.push_back(coordinate_matrix(g));
  }
  static GLattice full(std::size_t n, std::vector<LMatrix> action) {
    return GLattice(ZMatrix::identity(n), std::move(action));
  }

  std::size_t rank() const { return basis_.rows(); }
  std::size_t ambient_dim() const { return n_; }
  const ZMatrix& basis() const { return basis_; }
  const std::vector<LMatrix>& action() const { return action_; }
  /// Row-coordinate matrices: if v = c*B then g.v = (c*A_g)*B.
  const std::vector<ZMatrix>& coordinate_action() const { return coord_; }

  IntGroup group(std::size_t cap = kDefaultCap) const { return IntGroup::generate(n_, action_, cap); }

  /// Row-coordinate matrix for an arbitrary ambient matrix preserving M.
  ZMatrix coordinate_matrix(const LMatrix& g) const {
    ZMatrix A(rank(), rank());
    ZMatrix gz = to_z(g);
    for (std::size_t i = 0; i < rank(); ++i) {
      ZVec img(n_);
      for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c) img[r] += gz(r, c) * basis_(i, c);
      auto co = solve_in_lattice(basis_, img);
      if (!co) throw std::invalid_argument("action does not preserve the lattice");
      for (std::size_t j = 0; j < rank(); ++j) A(i, j) = (*co)[j];
    }
    if (abs(determinant(A)) != 1) throw std::invalid_argument("action is not invertible on the lattice");
    return A;
  }

  std::optional<ZVec> coordinates(const ZVec& v) const { return solve_in_lattice(basis_, v); }

  /// Elementary divisors (> 1) of Z^n / M (only the torsion part if M is not of full rank).
  std::vector<mpz_class> elementary_divisors() const {
    std::vector<mpz_class> out;
    for (const auto& d : smith(basis_).divisors)
      if (d != 1) out.push_back(d);
    return out;
  }

  GLattice with_action(std::vector<LMatrix> action) const { return GLattice(basis_, std::move(action)); }

 private:
  ZMatrix basis_;
  std::size_t n_ = 0;
  std::vector<LMatrix> action_;
  std::vector<ZMatrix> coord_;
};

struct NormalForms {
  HermiteResult hnf;
  SmithResult snf;
};

inline NormalForms normal_forms(const ZMatrix& A) { return {hermite(A), smith(A)}; }

namespace detail {

// Per-element row-coordinate matrices along the group table, A_{s*g} = A_g * A_s in row convention.
inline std::vector<ZMatrix> element_coordinates(const GroupTable& t, const std::vector<ZMatrix>& gen_coords,
                                                std::size_t r) {
  std::vector<ZMatrix> A(t.size());
  A[0] = ZMatrix::identity(r);
  std::vector<int> order(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return t.word(a).size() < t.word(b).size(); });
  for (int s : order) {
    if (s == 0) continue;
    const auto& w = t.word(s);
    int prev = 0;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) prev = t.right_mul(prev, w[k]);
    A[s] = gen_coords[w.back()] * A[prev];
  }
  return A;
}

// Z^1 / B^1 for the given table and row-coordinate generator action; returns SNF divisors > 1.
inline std::vector<mpz_class> h1_from_table(const GroupTable& t, const std::vector<ZMatrix>& gen_coords,
                                            std::size_t r) {
  std::size_t k = t.num_generators();
  if (k == 0 || r == 0) return {};
  auto A = element_coordinates(t, gen_coords, r);
  std::size_t nv = r * k;
  // f(s) = F[s] * x for column unknown x in Z^{rk}; f(s) as row vector = x^T F[s]^T.
  // Work with column vectors: the action of s on a column coordinate vector is A_s^T.
  std::vector<ZMatrix> F(t.size());
  std::vector<bool> have(t.size(), false);
  F[0] = ZMatrix(r, nv);
  have[0] = true;
  auto block = [&](std::size_t g) {
    ZMatrix E(r, nv);
    for (std::size_t i = 0; i < r; ++i) E(i, g * r + i) = 1;
    return E;
  };
  ZMatrix C(0, nv);
  std::vector<int> order(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return t.word(a).size() < t.word(b).size(); });
  std::vector<ZMatrix> rho(t.size());
  for (std::size_t s = 0; s < t.size(); ++s) rho[s] = A[s].transpose();
  // tree edges first (BFS order), then every edge as a constraint
  for (int s : order) {
    for (std::size_t g = 0; g < k; ++g) {
      int sg = t.right_mul(s, g);
      ZMatrix val = F[s] + rho[s] * block(g);  // f(s g) = f(s) + s.f(g)
      if (!have[sg]) {
        F[sg] = val;
        have[sg] = true;
      } else {
        ZMatrix d = val - F[sg];
        for (std::size_t i = 0; i < r; ++i) C.append_row(d.row(i));
      }
    }
  }
  ZMatrix Z = C.rows() ? integer_kernel(C) : ZMatrix::identity(nv);
  if (Z.rows() == 0) return {};
  // coboundaries: x_a = ((g_1 - 1)a, ..., (g_k - 1)a)
  ZMatrix Bc(0, Z.rows());
  for (std::size_t e = 0; e < r; ++e) {
    ZVec x(nv);
    for (std::size_t g = 0; g < k; ++g) {
      const ZMatrix& R = rho[t.generator(g)];
      for (std::size_t i = 0; i < r; ++i) x[g * r + i] = R(i, e) - (i == e ? 1 : 0);
    }
    auto co = solve_in_lattice(Z, x);
    if (!co) throw std::logic_error("coboundary is not a cocycle");
    Bc.append_row(*co);
  }
  auto s = smith(Bc);
  std::vector<mpz_class> out;
  for (const auto& d : s.divisors)
    if (d != 1) out.push_back(d);
  for (std::size_t i = s.divisors.size(); i < Z.rows(); ++i) out.push_back(0);  // free part
  return out;
}

}  // namespace detail

inline std::vector<long long> to_ll_vec(const std::vector<mpz_class>& v) {
  std::vector<long long> out;
  for (const auto& x : v) out.push_back(to_ll(x));
  return out;
}

/// Elementary divisors (> 1) of H^1(S, M), S generated by the lattice's action matrices.
inline std::vector<long long> h1_lattice(const GLattice& M, std::size_t cap = kDefaultCap) {
  IntGroup S = M.group(cap);
  return to_ll_vec(detail::h1_from_table(S.table, M.coordinate_action(), M.rank()));
}

/// H^1 for the subgroup of the lattice's group spanned by `elements` (matrices in the group).
inline std::vector<long long> h1_lattice_subgroup(const GLattice& M, const std::vector<LMatrix>& gens) {
  if (gens.empty()) return {};
  return h1_lattice(M.with_action(gens));
}

/// ker(Norm) / im(sigma - 1) for a cyclic group generated by one matrix.
inline std::vector<long long> h1_cyclic(const GLattice& M) {
  if (M.action().size() != 1) throw std::invalid_argument("h1_cyclic needs exactly one generator");
  IntGroup S = M.group();
  std::size_t r = M.rank();
  ZMatrix A = M.coordinate_action()[0].transpose();  // column convention
  ZMatrix N(r, r), P = ZMatrix::identity(r);
  for (std::size_t i = 0; i < S.order(); ++i) {
    N = N + P;
    P = A * P;
  }
  ZMatrix K = integer_kernel(N);
  if (K.rows() == 0) return {};
  ZMatrix Bc(0, K.rows());
  ZMatrix D = A - ZMatrix::identity(r);
  for (std::size_t e = 0; e < r; ++e) {
    ZVec col(r);
    for (std::size_t i = 0; i < r; ++i) col[i] = D(i, e);
    auto co = solve_in_lattice(K, col);
    if (!co) throw std::logic_error("image of sigma-1 escapes the norm kernel");
    Bc.append_row(*co);
  }
  auto s = smith(Bc);
  std::vector<long long> out;
  for (const auto& d : s.divisors)
    if (d != 1) out.push_back(to_ll(d));
  for (std::size_t i = s.divisors.size(); i < K.rows(); ++i) out.push_back(0);
  return out;
}

/// Finite abelian group (+) Z/d_i with automorphisms, one per generator of the acting group.
struct FiniteModule {
  std::vector<long long> divisors;
  std::vector<LMatrix> action;

  void validate(std::size_t num_generators) const {
    if (action.size() != num_generators)
      throw std::invalid_argument("module needs one action matrix per group generator");
    for (long long d : divisors)
      if (d < 1) throw std::invalid_argument("module divisors must be positive");
    std::size_t t = divisors.size();
    for (const auto& a : action) {
      if (a.rows() != t || a.cols() != t) throw std::invalid_argument("module action has wrong size");
      for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j)
          if ((a(i, j) * divisors[j]) % divisors[i] != 0)
            throw std::invalid_argument("module action is not well defined");
    }
  }
  std::size_t order() const {
    std::size_t n = 1;
    for (long long d : divisors) n *= static_cast<std::size_t>(d);
    return n;
  }
  std::vector<long long> apply(const LMatrix& a, const std::vector<long long>& x) const {
    std::vector<long long> y(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      long long s = 0;
      for (std::size_t j = 0; j < x.size(); ++j) s += a(i, j) * x[j];
      y[i] = mod_floor(s, divisors[i]);
    }
    return y;
  }
  std::vector<long long> add(const std::vector<long long>& x, const std::vector<long long>& y) const {
    std::vector<long long> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = mod_floor(x[i] + y[i], divisors[i]);
    return z;
  }
  std::vector<long long> element(std::size_t code) const {
    std::vector<long long> x(divisors.size());
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      x[i] = static_cast<long long>(code % divisors[i]);
      code /= divisors[i];
    }
    return x;
  }
};

/// Invariant factors (> 1) of H^1(S, A) by enumerating crossed homomorphisms.
inline std::vector<long long> h1_finite(const GroupTable& S, const FiniteModule& A,
                                        std::size_t limit = 4000000) {
  std::size_t k = S.num_generators();
  A.validate(k);
  std::size_t na = A.order();
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > limit / std::max<std::size_t>(na, 1)) throw std::invalid_argument("h1_finite: search too large");
    total *= na;
  }
  using Vec = std::vector<long long>;
  auto act = [&](int s, Vec x) {
    const auto& w = S.word(s);
    for (std::size_t i = w.size(); i-- > 0;) x = A.apply(A.action[w[i]], x);
    return x;
  };
  std::vector<std::vector<Vec>> cocycles;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    std::vector<Vec> gv(k);
    for (std::size_t g = 0; g < k; ++g) {
      gv[g] = A.element(c % na);
      c /= na;
    }
    std::vector<Vec> f(S.size());
    std::vector<bool> have(S.size(), false);
    f[0] = Vec(A.divisors.size(), 0);
    have[0] = true;
    bool ok = true;
    std::vector<int> queue{0};
    for (std::size_t qi = 0; qi < queue.size() && ok; ++qi) {
      int s = queue[qi];
      for (std::size_t g = 0; g < k && ok; ++g) {
        int sg = S.right_mul(s, g);
        Vec val = A.add(f[s], act(s, gv[g]));
        if (!have[sg]) {
          f[sg] = val;
          have[sg] = true;
          queue.push_back(sg);
        } else if (f[sg] != val) {
          ok = false;
        }
      }
    }
    if (ok) cocycles.push_back(gv);
  }
  std::set<std::vector<Vec>> principal;
  for (std::size_t code = 0; code < na; ++code) {
    Vec a = A.element(code);
    std::vector<Vec> gv;
    for (std::size_t g = 0; g < k; ++g) {
      Vec ga = A.apply(A.action[g], a);
      Vec neg(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) neg[i] = mod_floor(-a[i], A.divisors[i]);
      gv.push_back(A.add(ga, neg));
    }
    principal.insert(gv);
  }
  std::size_t h = cocycles.size() / principal.size();
  if (h == 1) return {};
  auto scale = [&](const std::vector<Vec>& x, long long m) {
    std::vector<Vec> y = x;
    for (auto& v : y)
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod_floor(v[i] * m, A.divisors[i]);
    return y;
  };
  // p-primary structure from the sizes of the p^j-torsion of the quotient
  std::map<long long, std::vector<long long>> exps;  // prime -> exponents (descending)
  for (auto [p, e] : factorize(static_cast<long long>(h))) {
    std::size_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= static_cast<std::size_t>(p);
    std::vector<std::size_t> tors{1};  // |H[p^j]|
    long long pj = 1;
    while (tors.back() < pe) {
      pj *= p;
      std::size_t cnt = 0;
      for (const auto& z : cocycles) cnt += principal.count(scale(z, pj)) > 0;
      tors.push_back(cnt / principal.size());
    }
    // number of cyclic factors of order >= p^j is log_p(tors[j]/tors[j-1])
    std::vector<int> ge;
    for (std::size_t j = 1; j < tors.size(); ++j) {
      std::size_t ratio = tors[j] / tors[j - 1];
      int c = 0;
      while (ratio > 1) {
        ratio /= static_cast<std::size_t>(p);
        ++c;
      }
      ge.push_back(c);
    }
    std::vector<long long> es;
    for (std::size_t j = 0; j < ge.size(); ++j) {
      int exactly = ge[j] - (j + 1 < ge.size() ? ge[j + 1] : 0);
      for (int c = 0; c < exactly; ++c) es.push_back(static_cast<long long>(j + 1));
    }
    std::sort(es.rbegin(), es.rend());
    exps[p] = es;
  }
  std::size_t nf = 0;
  for (auto& [p, es] : exps) nf = std::max(nf, es.size());
  std::vector<long long> inv(nf, 1);
  for (auto& [p, es] : exps)
    for (std::size_t i = 0; i < es.size(); ++i) {
      long long q = 1;
      for (long long j = 0; j < es[i]; ++j) q *= p;
      inv[i] *= q;
    }
  std::sort(inv.begin(), inv.end());
  return inv;
}

// ---------------------------------------------------------------------------
// permutation bases

struct SearchOptions {
  long long box = 0;                   ///< 0 = default bound from the elementary divisors
  std::size_t budget = 20000000;       ///< leaf evaluations
};

struct PermBasisSearch {
  std::optional<ZMatrix> basis;        ///< permutation basis of M (rows), if found
  std::optional<ZMatrix> best_sublattice;  ///< permutation sublattice of smallest index seen
  mpz_class best_index = 0;            ///< [M : best_sublattice], 0 if none
  bool exhausted = false;              ///< search stopped on budget
  long long box = 0;
};

namespace detail {

inline long long det_ll(const std::vector<std::vector<long long>>& m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (n == 3)
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  ZMatrix z(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) z(i, j) = to_z(m[i][j]);
  return to_ll(determinant(z));
}

struct Candidate {
  std::vector<long long> v;      // ambient
  std::vector<long long> c;      // coordinates in M
  std::vector<std::vector<long long>> orbit_c;  // coordinates of the orbit (deterministic order)
  std::vector<std::vector<long long>> orbit_v;
};

inline bool candidate_less(const std::vector<long long>& a, const std::vector<long long>& b) {
  auto key = [](const std::vector<long long>& v) {
    long long mx = 0;
    int neg = 0;
    for (long long x : v) {
      mx = std::max(mx, x < 0 ? -x : x);
      neg += x < 0;
    }
    return std::pair<long long, int>(mx, neg);
  };
  auto ka = key(a), kb = key(b);
  if (ka != kb) return ka < kb;
  return a > b;
}

// Enumerate v = d*E with E in row echelon form (positive pivots), |v_j| <= B.
template <class F>
void enumerate_box(const LMatrix& E, const std::vector<std::size_t>& piv, long long B, F&& emit) {
  std::size_t f = E.rows(), n = E.cols();
  std::vector<long long> d(f, 0), v(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == f) {
      for (long long x : v)
        if (x > B || x < -B) return;
      emit(d, v);
      return;
    }
    long long e = E(i, piv[i]);
    long long partial = v[piv[i]];
    long long lo = -B - partial, hi = B - partial;
    long long dlo = lo >= 0 ? (lo + e - 1) / e : -((-lo) / e);
    long long dhi = hi >= 0 ? hi / e : -((-hi + e - 1) / e);
    for (long long x = dlo; x <= dhi; ++x) {
      d[i] = x;
      for (std::size_t j = 0; j < n; ++j) v[j] += x * E(i, j);
      rec(i + 1);
      for (std::size_t j = 0; j < n; ++j) v[j] -= x * E(i, j);
    }
    d[i] = 0;
  };
  rec(0);
}

inline std::vector<long long> row_times(const std::vector<long long>& c, const std::vector<std::vector<long long>>& A) {
  std::vector<long long> out(A.empty() ? 0 : A[0].size(), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i])
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += c[i] * A[i][j];
  return out;
}

}  // namespace detail

/// Searches for a Z-basis of M permuted by the group generated by `gens` (default: M's action).
inline PermBasisSearch permutation_basis_search(const GLattice& M, const SearchOptions& opt = {},
                                                const std::vector<LMatrix>* gens_override = nullptr) {
  PermBasisSearch out;
  std::size_t r = M.rank(), n = M.ambient_dim();
  const std::vector<LMatrix>& gens = gens_override ? *gens_override : M.action();
  GLattice ML = gens_override ? M.with_action(gens) : M;
  IntGroup S = IntGroup::generate(n, gens);
  std::size_t order = S.order();
  if (r == 0) {
    out.basis = ZMatrix(0, n);
    out.best_sublattice = out.basis;
    out.best_index = 1;
    return out;
  }
  // row-coordinate action of every element
  std::vector<std::vector<std::vector<long long>>> act(order);
  {
    auto A = detail::element_coordinates(S.table, ML.coordinate_action(), r);
    for (std::size_t s = 0; s < order; ++s) act[s] = to_l(A[s]).to_rows();
  }
  auto Bl = to_l(M.basis()).to_rows();
  if (order == 1) {
    out.basis = M.basis();
    out.best_sublattice = M.basis();
    out.best_index = 1;
    return out;
  }
  long long Bbox = opt.box;
  if (Bbox <= 0) {
    auto ed = smith(M.basis()).divisors;
    std::sort(ed.begin(), ed.end());
    long long d1 = ed.empty() ? 1 : to_ll(ed.back());
    long long d2 = ed.size() >= 2 ? to_ll(ed[ed.size() - 2]) : 0;
    Bbox = d1 + d1 + d2;
  }
  out.box = Bbox;

  // orbit-type plans: multisets of subgroup classes T with sum [S:T] = r matching the character
  auto classes = S.table.subgroup_classes();
  std::vector<long long> trace(order);
  for (std::size_t s = 0; s < order; ++s) {
    long long t = 0;
    for (std::size_t i = 0; i < r; ++i) t += act[s][i][i];
    trace[s] = t;
  }
  auto fixed_points = [&](const std::vector<int>& T, int s) {
    // |{x in S/T : s x = x}| = #{cosets gT with g^-1 s g in T}
    long long cnt = 0;
    for (std::size_t g = 0; g < order; ++g)
      if (std::binary_search(T.begin(), T.end(), S.table.conj(s, static_cast<int>(g)))) ++cnt;
    return cnt / static_cast<long long>(T.size());
  };
  std::vector<std::vector<long long>> class_char(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (std::size_t s = 0; s < order; ++s) class_char[c].push_back(fixed_points(classes[c], static_cast<int>(s)));
  std::vector<std::vector<std::size_t>> plans;
  {
    std::vector<std::size_t> cur;
    std::function<void(std::size_t, std::size_t, std::vector<long long>)> rec =
        [&](std::size_t start, std::size_t size, std::vector<long long> ch) {
          if (size == r) {
            if (ch == trace) plans.push_back(cur);
            return;
          }
          for (std::size_t c = start; c < classes.size(); ++c) {
            std::size_t idx = order / classes[c].size();
            if (size + idx > r) continue;
            cur.push_back(c);
            auto ch2 = ch;
            for (std::size_t s = 0; s < order; ++s) ch2[s] += class_char[c][s];
            rec(c, size + idx, ch2);
            cur.pop_back();
          }
        };
    rec(0, 0, std::vector<long long>(order, 0));
  }
  // fewer orbits first, then larger stabilizers
  std::stable_sort(plans.begin(), plans.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });

  auto orbit_of = [&](const std::vector<long long>& c, std::vector<std::vector<long long>>& oc,
                      std::vector<std::vector<long long>>& ov) {
    std::set<std::vector<long long>> seen;
    oc.clear();
    ov.clear();
    for (std::size_t s = 0; s < order; ++s) {
      auto img = detail::row_times(c, act[s]);
      if (seen.insert(img).second) oc.push_back(img);
    }
    std::sort(oc.begin(), oc.end(), [&](const auto& a, const auto& b) {
      return detail::candidate_less(detail::row_times(a, Bl), detail::row_times(b, Bl));
    });
    for (const auto& x : oc) ov.push_back(detail::row_times(x, Bl));
  };

  // candidates for each class representative T, within box b
  auto candidates_for = [&](std::size_t cls, long long b, std::size_t& work) {
    const auto& T = classes[cls];
    ZMatrix stack(0, r);
    for (int t : S.table.generating_set(T)) {
      for (std::size_t i = 0; i < r; ++i) {
        std::vector<mpz_class> col(r);
        for (std::size_t j = 0; j < r; ++j) col[j] = to_z(act[t][j][i] - (i == j ? 1 : 0));
        stack.append_row(col);
      }
    }
    ZMatrix K = stack.rows() ? integer_kernel(stack) : ZMatrix::identity(r);  // coords fixed by T
    std::vector<detail::Candidate> out_c;
    if (K.rows() == 0) return out_c;
    ZMatrix F = K * M.basis();
    auto h = hermite(F);
    ZMatrix E(0, n), Ec(0, r);
    ZMatrix UK = h.U * K;
    for (std::size_t i = 0; i < h.rank; ++i) {
      E.append_row(h.H.row(i));
      Ec.append_row(UK.row(i));
    }
    LMatrix El = to_l(E);
    auto Ecl = to_l(Ec).to_rows();
    std::size_t want = order / T.size();
    detail::enumerate_box(El, h.pivots, b, [&](const std::vector<long long>& d, const std::vector<long long>& v) {
      ++work;
      bool zero = std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
      if (zero) return;
      detail::Candidate cand;
      cand.v = v;
      cand.c = detail::row_times(d, Ecl);
      orbit_of(cand.c, cand.orbit_c, cand.orbit_v);
      if (cand.orbit_c.size() != want) return;
      out_c.push_back(std::move(cand));
    });
    std::sort(out_c.begin(), out_c.end(),
              [](const auto& a, const auto& b) { return detail::candidate_less(a.v, b.v); });
    return out_c;
  };

  std::vector<long long> boxes;
  for (long long b = 1; b < Bbox; b *= 2) boxes.push_back(b);
  boxes.push_back(Bbox);
  std::size_t work = 0;
  for (long long b : boxes) {
    for (const auto& plan : plans) {
      std::map<std::size_t, std::vector<detail::Candidate>> cands;
      for (std::size_t c : plan)
        if (!cands.count(c)) cands[c] = candidates_for(c, b, work);
      std::vector<std::vector<long long>> rows;  // coordinates chosen so far
      std::vector<const detail::Candidate*> chosen;
      bool found = false;
      std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t depth, std::size_t from) {
        if (found || work > opt.budget) return;
        if (depth == plan.size()) {
          ++work;
          long long det = detail::det_ll(rows);
          if (det == 0) return;
          mpz_class ad = to_z(det < 0 ? -det : det);
          if (out.best_index == 0 || ad < out.best_index) {
            out.best_index = ad;
            ZMatrix N(0, n);
            for (auto* cd : chosen)
              for (const auto& ov : cd->orbit_v) {
                ZVec zr = to_zvec(ov);
                N.append_row(zr);
              }
            out.best_sublattice = N;
          }
          if (ad == 1) found = true;
          return;
        }
        const auto& list = cands[plan[depth]];
        std::size_t begin = (depth > 0 && plan[depth] == plan[depth - 1]) ? from : 0;
        for (std::size_t i = begin; i < list.size() && !found; ++i) {
          const auto& cd = list[i];
          for (const auto& oc : cd.orbit_c) rows.push_back(oc);
          // prune dependent partial families
          if (depth + 1 < plan.size()) {
            ZMatrix part(0, r);
            for (const auto& x : rows) part.append_row(to_zvec(x));
            if (rank(part) < rows.size()) {
              rows.resize(rows.size() - cd.orbit_c.size());
              continue;
            }
          }
          chosen.push_back(&cd);
          dfs(depth + 1, i + 1);
          chosen.pop_back();
          rows.resize(rows.size() - cd.orbit_c.size());
          if (work > opt.budget) return;
        }
      };
      dfs(0, 0);
      if (found) {
        ZMatrix N = *out.best_sublattice;
        auto rowsv = N.to_rows();
        std::sort(rowsv.begin(), rowsv.end(), [](const ZVec& a, const ZVec& b) { return a > b; });
        out.basis = ZMatrix::from_rows(rowsv, n);
        out.best_sublattice = out.basis;
        return out;
      }
      if (work > opt.budget) {
        out.exhausted = true;
        return out;
      }
    }
  }
  return out;
}

struct SummandWitness {
  std::vector<LMatrix> subgroup_generators;
  std::size_t subgroup_order = 0;
  std::vector<long long> h1;
};

struct SummandResult {
  enum class Kind { Yes, No, Undetermined } kind = Kind::Undetermined;
  std::optional<ZMatrix> basis;
  std::optional<SummandWitness> witness;
  PermBasisSearch search;
};

inline const char* to_string(SummandResult::Kind k) {
  switch (k) {
    case SummandResult::Kind::Yes: return "Yes";
    case SummandResult::Kind::No: return "No";
    default: return "Undetermined";
  }
}

/// H^1 obstruction over subgroups (up to conjugacy); first nonzero one found, smallest first.
inline std::optional<SummandWitness> h1_obstruction(const GLattice& M) {
  IntGroup S = M.group();
  for (const auto& H : S.table.subgroup_classes()) {
    if (H.size() == 1) continue;
    std::vector<LMatrix> gens;
    for (int g : S.table.generating_set(H)) gens.push_back(S.elements[g]);
    auto h = h1_lattice(M.with_action(gens));
    if (!h.empty()) return SummandWitness{gens, H.size(), h};
  }
  return std::nullopt;
}

inline SummandResult permutation_summand_test(const GLattice& M, const SearchOptions& opt = {}) {
  SummandResult res;
  if (auto w = h1_obstruction(M)) {
    res.kind = SummandResult::Kind::No;
    res.witness = *w;
    return res;
  }
  res.search = permutation_basis_search(M, opt);
  if (res.search.basis) {
    res.kind = SummandResult::Kind::Yes;
    res.basis = res.search.basis;
  }
  return res;
}

struct IndexBound {
  long long iota1 = 0;
  mpz_class iota2 = 0;
  mpz_class product = 0;
};

/// Bound [S:S'] * [M:N] for a permutation S'-sublattice N of M (rows of N permuted by S').
inline IndexBound index_bound(const GLattice& M, const std::vector<LMatrix>& subgroup_gens, const ZMatrix& N) {
  if (N.rows() != M.rank()) throw std::invalid_argument("index_bound: N must have full rank in M");
  std::vector<std::vector<mpz_class>> rows = N.to_rows();
  ZMatrix coords(0, M.rank());
  for (const auto& v : rows) {
    auto c = M.coordinates(v);
    if (!c) throw std::invalid_argument("index_bound: N is not contained in M");
    coords.append_row(*c);
  }
  std::set<ZVec> rowset(rows.begin(), rows.end());
  for (const auto& g : subgroup_gens) {
    for (const auto& v : rows) {
      ZVec img(v.size());
      for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) img[i] += to_z(g(i, j)) * v[j];
      if (!rowset.count(img)) throw std::invalid_argument("index_bound: N is not S'-stable with a permuted basis");
    }
  }
  IntGroup S = M.group();
  IntGroup Sp = IntGroup::generate(M.ambient_dim(), subgroup_gens);
  for (const auto& e : Sp.elements)
    if (std::find(S.elements.begin(), S.elements.end(), e) == S.elements.end())
      throw std::invalid_argument("index_bound: S' is not a subgroup of S");
  IndexBound b;
  b.iota1 = static_cast<long long>(S.order() / Sp.order());
  b.iota2 = abs(determinant(coords));
  if (b.iota2 == 0) throw std::invalid_argument("index_bound: N must have full rank in M");
  b.product = to_z(b.iota1) * b.iota2;
  return b;
}

}  // namespace nrep
