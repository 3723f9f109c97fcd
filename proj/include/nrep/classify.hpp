#pragma once

#include "nrep/catalog.hpp"
#include "nrep/diaggrp.hpp"
#include "nrep/latcoh.hpp"
#include "nrep/matgrp.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nrep {

enum class Verdict { NotNeutral, Neutral, RhoNeutral, NeutralNotRhoNeutral, Undetermined };
enum class Ambient { GL, PGL };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::NotNeutral: return "NotNeutral";
    case Verdict::Neutral: return "Neutral";
    case Verdict::RhoNeutral: return "RhoNeutral";
    case Verdict::NeutralNotRhoNeutral: return "NeutralNotRhoNeutral";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "?";
}
inline std::string to_string(Ambient a) { return a == Ambient::GL ? "GL" : "PGL"; }

struct FieldContext {
  long long characteristic = 0;
  bool contains_zeta3 = false;
};

using Params = std::vector<std::pair<std::string, long long>>;

struct ClassificationReport {
  Ambient ambient = Ambient::GL;
  int dim = 1;
  Verdict verdict = Verdict::Undetermined;
  std::string family;  ///< empty when no family matched
  Params parameters;
  std::optional<CycMatrix> conjugator;  ///< Q with Q^-1 G Q equal to the family group
  std::size_t group_order = 1;
  long long scalar_order = 1;
  std::vector<std::string> notes;

  std::optional<long long> param(const std::string& k) const {
    for (const auto& [n, v] : parameters)
      if (n == k) return v;
    return std::nullopt;
  }
};

// ---------------------------------------------------------------------------
// families

namespace family {

inline ProjDiagonalGroup pgl2_cyclic(long long n) { return ProjDiagonalGroup::from_exponents(2, n, {{0, 1}}); }

/// ⟨diag(ζ_a,1,1), diag(1,ζ_a,1), diag(ζ_an, ζ_an^d, 1)⟩
inline ProjDiagonalGroup pgl3_ae(long long a, long long n, long long d) {
  return ProjDiagonalGroup::from_exponents(3, a * n, {{n, 0, 0}, {0, n, 0}, {1, d, 0}});
}

/// ⟨diag(ζ_2m, ζ_2m, 1), diag(ζ_2n, ζ_2n^-1, 1)⟩
inline ProjDiagonalGroup pgl3_b(long long m, long long n) {
  long long L = lcm_ll(2 * m, 2 * n);
  return ProjDiagonalGroup::from_exponents(3, L, {{L / (2 * m), L / (2 * m), 0}, {L / (2 * n), -L / (2 * n), 0}});
}

inline DiagonalGroup gl2_main(long long m, long long n) { return sl_preimage({{2}, {m}, pgl2_cyclic(n)}); }
inline DiagonalGroup gl3_i(long long c, long long a, long long n, long long d) {
  return sl_preimage({{3}, {c}, pgl3_ae(a, n, d)});
}
inline DiagonalGroup gl3_ii(long long m, long long n, long long c1, long long c2) {
  return sl_preimage({{2, 1}, {c1, c2}, pgl3_b(m, n)});
}

/// ⟨ζ_3c I, M0, ..., M_k⟩ with k = 2 (H2 preimage) or 3 (H3 preimage)
inline std::vector<CycMatrix> gl3_hessian(long long c, int k) {
  const auto& C = HessianCatalog::get();
  std::vector<CycMatrix> g{CycMatrix::scalar(3, CycNum::zeta(3 * c, 1, C.kLevel))};
  for (int i = 0; i <= k; ++i) g.push_back(C.M(i));
  return g;
}

}  // namespace family

namespace detail {

inline long long need(const Params& p, const char* k) {
  for (const auto& [n, v] : p)
    if (n == k) return v;
  throw std::invalid_argument(std::string("missing family parameter '") + k + "'");
}

inline std::vector<Perm> sym(int n) { return all_perms(n); }

/// Q with Q^-1 G Q = σ·D: diagonalizer followed by the permutation.
inline CycMatrix diag_conjugator(const CycMatrix& P, const Perm& s) {
  return P * CycMatrix::permutation(inverse(s), P.level());
}

inline bool coprime_to(long long x, long long p) { return p == 0 || std::gcd(x, p) == 1; }

}  // namespace detail

/// Generators of the group a family tag and parameters describe (projective representatives for PGL tags).
inline std::vector<CycMatrix> family_generators(const std::string& fam, const Params& p) {
  using detail::need;
  if (fam == "GL2-main") return diagonal_matrices(family::gl2_main(need(p, "m"), need(p, "n")));
  if (fam == "GL3-i")
    return diagonal_matrices(family::gl3_i(need(p, "c"), need(p, "a"), need(p, "n"), need(p, "d")));
  if (fam == "GL3-ii")
    return diagonal_matrices(family::gl3_ii(need(p, "m"), need(p, "n"), need(p, "c1"), need(p, "c2")));
  if (fam == "GL3-iii") return family::gl3_hessian(need(p, "c"), 2);
  if (fam == "GL3-iv") return family::gl3_hessian(need(p, "c"), 3);
  if (fam == "PGL2-cyclic-even" || fam == "PGL2-cyclic-odd" || fam == "PGL2-cyclic-other")
    return diagonal_matrices(family::pgl2_cyclic(need(p, "n")));
  if (fam == "PGL3-a" || fam == "PGL3-e")
    return diagonal_matrices(family::pgl3_ae(need(p, "a"), need(p, "n"), need(p, "d")));
  if (fam == "PGL3-b") return diagonal_matrices(family::pgl3_b(need(p, "m"), need(p, "n")));
  if (fam == "PGL3-c" || fam == "PGL3-d") {
    auto g = HessianCatalog::get().generators(fam == "PGL3-c" ? 2 : 3);
    return g;
  }
  throw std::invalid_argument("unknown family '" + fam + "'");
}

// ---------------------------------------------------------------------------
// Hessian normal form

/// Q with Q^-1 Ḡ Q = H_k in PGL3 (k = 2 or 3), if Ḡ is conjugate to it.
inline std::optional<CycMatrix> hessian_conjugator(const ProjGroup& G, int k) {
  const auto& C = HessianCatalog::get();
  const ProjGroup& target = C.H(k);
  if (G.dim() != 3 || G.order() != target.order()) return std::nullopt;
  const GroupTable& T = G.table;
  std::vector<int> P;
  try {
    P = T.sylow(3);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  if (P.size() != 9) return std::nullopt;

  // g with eigenvalues μ, μζ3, μζ3²
  std::optional<CycMatrix> g;
  std::vector<CycVec> v(3);
  for (int x : P) {
    if (x == 0) continue;
    const CycMatrix& cand = G.rep(x);
    auto es = eigenspaces(cand, matrix_order(cand));
    if (es.size() != 3) continue;
    // find an ordering with successive ratios ζ3
    for (int s = 0; s < 3 && !g; ++s) {
      const auto& mu = es[s].value;
      auto ratio_is = [&](const RootOfUnity& a, long long k3) {
        // a / mu == ζ3^k3 ?
        long long L = lcm_ll(lcm_ll(a.order, mu.order), 3);
        return mod_floor(a.exponent * (L / a.order) - mu.exponent * (L / mu.order) - k3 * (L / 3), L) == 0;
      };
      int i1 = -1, i2 = -1;
      for (int t = 0; t < 3; ++t) {
        if (t == s) continue;
        if (ratio_is(es[t].value, 1)) i1 = t;
        if (ratio_is(es[t].value, 2)) i2 = t;
      }
      if (i1 < 0 || i2 < 0) continue;
      g = cand;
      v = {es[s].basis[0], es[i1].basis[0], es[i2].basis[0]};
    }
    if (g) break;
  }
  if (!g) return std::nullopt;
  int gi = *G.coset_of(*g);
  auto gsub = T.subgroup(std::vector<int>{gi});

  // h with h g h^-1 = ζ3² g
  int L0 = static_cast<int>(lcm_ll(lcm_ll(G.lift.level(), g->level()), 3));
  CycNum z3 = CycNum::zeta(3, 1, L0);
  std::optional<CycMatrix> h;
  for (int x : P) {
    if (std::binary_search(gsub.begin(), gsub.end(), x)) continue;
    CycMatrix cand = G.rep(x);
    CycMatrix comm = cand * *g * cand.inverse() * g->inverse();
    auto s = comm.scalar_value();
    if (!s) return std::nullopt;  // commutator not scalar
    if (*s == z3 * z3)
      h = cand;
    else if (*s == z3)
      h = cand * cand;
    else
      return std::nullopt;
    break;
  }
  if (!h) return std::nullopt;

  // basis w0 = v0, w1 = h w0, w2 = h w1 and h w2 = s w0; rescale by κ with κ³ = s^-1
  auto h3 = ((*h) * (*h) * (*h)).scalar_value();
  if (!h3) return std::nullopt;
  auto sr = h3->as_root_of_unity();
  if (!sr) return std::nullopt;
  int L = static_cast<int>(lcm_ll(L0, 3 * sr->order));
  CycNum kappa = CycNum::zeta(3 * sr->order, -sr->exponent, L);
  CycMatrix hL = h->at_level(L);
  CycVec w0 = v[0];
  for (auto& x : w0) x = x.at_level(L);
  CycVec w1 = hL.apply(w0), w2 = hL.apply(w1);
  for (auto& x : w1) x = kappa * x;
  for (auto& x : w2) x = kappa * kappa * x;
  CycMatrix Q = CycMatrix::from_columns({w0, w1, w2});
  CycMatrix Qi = Q.inverse();
  if (!(Qi * *g * Q * C.M(0).inverse()).is_scalar() || !(Qi * *h * Q * C.M(1).inverse()).is_scalar())
    throw std::logic_error("hessian normal form: Sylow subgroup was not moved onto H1");

  // the conjugate normalizes H1, so it lies in H5; finish by searching H5
  std::vector<CycMatrix> X;
  for (const auto& x : G.lift.generators()) X.push_back(Qi * x * Q);
  const ProjGroup& H5 = C.H(5);
  for (std::size_t r = 0; r < H5.order(); ++r) {
    const CycMatrix& n = H5.rep(static_cast<int>(r));
    CycMatrix ni = n.inverse();
    bool ok = true;
    for (const auto& x : X) {
      if (!target.coset_of(ni * x * n)) {
        ok = false;
        break;
      }
    }
    if (ok) return Q * n;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// classifiers

inline ClassificationReport classify_gl1(const MatrixGroup& G) {
  ClassificationReport R;
  R.ambient = Ambient::GL;
  R.dim = 1;
  R.group_order = G.order();
  R.scalar_order = static_cast<long long>(G.order());
  R.verdict = Verdict::Neutral;
  R.notes.push_back("every finite subgroup of GL1 is neutral");
  return R;
}

inline ClassificationReport classify_pgl2(const ProjGroup& G, const FieldContext& ctx = {}) {
  ClassificationReport R;
  R.ambient = Ambient::PGL;
  R.dim = 2;
  R.group_order = G.order();
  long long n = static_cast<long long>(G.order());
  if (!G.is_cyclic()) {
    R.verdict = Verdict::RhoNeutral;
    R.notes.push_back("not cyclic");
    return R;
  }
  R.parameters = {{"n", n}};
  if (!detail::coprime_to(n, ctx.characteristic)) {
    R.verdict = Verdict::RhoNeutral;
    R.family = "PGL2-cyclic-other";
    R.notes.push_back("cyclic of order divisible by the characteristic");
    return R;
  }
  // C_n is conjugate to ⟨diag(1, ζ_n)⟩
  if (n % 2 == 0) {
    R.verdict = Verdict::NotNeutral;
    R.family = "PGL2-cyclic-even";
  } else {
    R.verdict = Verdict::NeutralNotRhoNeutral;
    R.family = "PGL2-cyclic-odd";
  }
  if (G.lift.is_abelian()) {
    auto d = simultaneous_diagonalize(G.lift);
    auto s = equals_up_to_permutation(projective_diag(d.D), family::pgl2_cyclic(n));
    if (s) R.conjugator = detail::diag_conjugator(d.P, *s);
  }
  return R;
}

inline ClassificationReport classify_gl2(const MatrixGroup& G, const FieldContext& ctx = {}) {
  ClassificationReport R;
  R.ambient = Ambient::GL;
  R.dim = 2;
  R.group_order = G.order();
  R.scalar_order = scalar_subgroup(G).order;
  if (ctx.characteristic == 2) {
    R.verdict = Verdict::Neutral;
    R.notes.push_back("characteristic 2: every finite subgroup of GL2 is neutral");
    return R;
  }
  R.verdict = Verdict::Neutral;
  if (!G.is_abelian()) {
    R.notes.push_back("non-abelian, so the projective image is not cyclic");
    return R;
  }
  auto diag = simultaneous_diagonalize(G);
  long long N = static_cast<long long>(G.order());
  if (N % 2) {
    R.notes.push_back("odd order: no (m,n) with 2mn = |G|");
    return R;
  }
  auto S2 = detail::sym(2);
  for (long long m : divisors(N / 2)) {
    long long n = N / 2 / m;
    if (!detail::coprime_to(m * n, ctx.characteristic)) continue;
    auto s = equals_up_to_permutation(diag.D, family::gl2_main(m, n), &S2);
    if (!s) continue;
    R.verdict = Verdict::NotNeutral;
    R.family = "GL2-main";
    R.parameters = {{"m", m}, {"n", n}};
    R.conjugator = detail::diag_conjugator(diag.P, *s);
    return R;
  }
  R.notes.push_back("abelian, but conjugate to no <z_2m I, diag(z_2n^-1, z_2n)> with 2mn = |G|");
  return R;
}

namespace detail {
inline void require_char0(const FieldContext& ctx) {
  if (ctx.characteristic != 0) throw std::invalid_argument("dim-3 classification requires characteristic 0");
}
}  // namespace detail

inline ClassificationReport classify_pgl3(const ProjGroup& G, const FieldContext& ctx = {}) {
  detail::require_char0(ctx);
  ClassificationReport R;
  R.ambient = Ambient::PGL;
  R.dim = 3;
  R.group_order = G.order();
  R.verdict = Verdict::RhoNeutral;
  long long N = static_cast<long long>(G.order());
  auto S3 = detail::sym(3);
  if (G.lift.is_abelian()) {
    auto diag = simultaneous_diagonalize(G.lift);
    auto Pd = projective_diag(diag.D);
    for (long long a : divisors(N)) {
      if (N % (a * a)) continue;
      long long n = N / (a * a);
      for (long long d = 0; d < n; ++d) {
        if ((d * d - d + 1) % n) continue;
        auto s = equals_up_to_permutation(Pd, family::pgl3_ae(a, n, d), &S3);
        if (!s) continue;
        bool ta = (a * n) % 3 == 0;
        R.family = ta ? "PGL3-a" : "PGL3-e";
        R.verdict = ta ? Verdict::NotNeutral : Verdict::NeutralNotRhoNeutral;
        R.parameters = {{"a", a}, {"n", n}, {"d", d}};
        R.conjugator = detail::diag_conjugator(diag.P, *s);
        return R;
      }
    }
    if (N % 2 == 0)
      for (long long m : divisors(N / 2)) {
        long long n = N / 2 / m;
        auto s = equals_up_to_permutation(Pd, family::pgl3_b(m, n), &S3);
        if (!s) continue;
        R.family = "PGL3-b";
        R.verdict = Verdict::NotNeutral;
        R.parameters = {{"m", m}, {"n", n}};
        R.conjugator = detail::diag_conjugator(diag.P, *s);
        return R;
      }
    R.notes.push_back("diagonalizable, of none of the types a, b, e");
    return R;
  }
  for (int k : {2, 3}) {
    if (N != static_cast<long long>(HessianCatalog::get().H(k).order())) continue;
    if (auto Q = hessian_conjugator(G, k)) {
      R.conjugator = *Q;
      if (k == 2) {
        R.family = "PGL3-c";
        R.verdict = Verdict::NotNeutral;
      } else {
        R.family = "PGL3-d";
        R.verdict = ctx.contains_zeta3 ? Verdict::RhoNeutral : Verdict::NotNeutral;
        R.notes.push_back(ctx.contains_zeta3 ? "z3 lies in the base field" : "z3 does not lie in the base field");
      }
      return R;
    }
  }
  R.notes.push_back("not diagonalizable and not conjugate to H2 or H3");
  return R;
}

inline ClassificationReport classify_gl3(const MatrixGroup& G, const FieldContext& ctx = {}) {
  detail::require_char0(ctx);
  ClassificationReport R;
  R.ambient = Ambient::GL;
  R.dim = 3;
  R.group_order = G.order();
  R.scalar_order = scalar_subgroup(G).order;
  R.verdict = Verdict::Neutral;
  long long N = static_cast<long long>(G.order()), t = R.scalar_order;
  long long Nbar = N / t;
  auto S3 = detail::sym(3);
  if (G.is_abelian()) {
    auto diag = simultaneous_diagonalize(G);
    // (i): scalar kernel of the SL3^(c) preimage has order 3c
    if (t % 3 == 0) {
      long long c = t / 3;
      for (long long a : divisors(Nbar)) {
        if (Nbar % (a * a)) continue;
        long long n = Nbar / (a * a);
        for (long long d = 0; d < n; ++d) {
          if ((d * d - d + 1) % n) continue;
          auto s = equals_up_to_permutation(diag.D, family::gl3_i(c, a, n, d), &S3);
          if (!s) continue;
          R.verdict = Verdict::NotNeutral;
          R.family = "GL3-i";
          R.parameters = {{"c", c}, {"a", a}, {"n", n}, {"d", d}};
          R.conjugator = detail::diag_conjugator(diag.P, *s);
          return R;
        }
      }
    }
    // (ii): scalar kernel has order |2c1 + c2| = t; c1 matters modulo lcm(2m,2n)·t
    if (Nbar % 2 == 0) {
      for (long long m : divisors(Nbar / 2)) {
        long long n = Nbar / 2 / m;
        long long period = lcm_ll(2 * m, 2 * n) * t;
        for (long long sg : {1LL, -1LL})
          for (long long c1 = 0; c1 < period; ++c1) {
            long long c2 = sg * t - 2 * c1;
            auto s = equals_up_to_permutation(diag.D, family::gl3_ii(m, n, c1, c2), &S3);
            if (!s) continue;
            R.verdict = Verdict::NotNeutral;
            R.family = "GL3-ii";
            R.parameters = {{"m", m}, {"n", n}, {"c1", c1}, {"c2", c2}};
            R.conjugator = detail::diag_conjugator(diag.P, *s);
            return R;
          }
      }
    }
    R.notes.push_back("abelian, but conjugate to no member of families i or ii");
    return R;
  }
  ProjGroup Gb = projective_image(G);
  for (int k : {2, 3}) {
    if (Gb.order() != HessianCatalog::get().H(k).order()) continue;
    auto Q = hessian_conjugator(Gb, k);
    if (!Q) continue;
    if (t % 3) {
      R.notes.push_back("image is conjugate to H" + std::to_string(k) + " but 3 does not divide the scalar order");
      return R;
    }
    long long c = t / 3;
    auto conj = conjugate_all(G.elements(), *Q);
    auto F = MatrixGroup::closure(family::gl3_hessian(c, k), N + 1);
    if (F.order() != G.order() || !same_element_set(conj, F.elements())) {
      R.notes.push_back("image is conjugate to H" + std::to_string(k) + ", but G is not the SL3^(c) preimage");
      return R;
    }
    R.family = k == 2 ? "GL3-iii" : "GL3-iv";
    R.parameters = {{"c", c}};
    R.conjugator = *Q;
    if (k == 3 && ctx.contains_zeta3) {
      R.verdict = Verdict::Neutral;
      R.notes.push_back("matches the H3 preimage, which is neutral since z3 lies in the base field");
    } else {
      R.verdict = Verdict::NotNeutral;
    }
    return R;
  }
  R.notes.push_back("non-abelian and not a Hessian preimage");
  return R;
}

// ---------------------------------------------------------------------------
// dispatch and recheck

struct GroupInput {
  Ambient ambient = Ambient::GL;
  int dim = 1;
  std::vector<CycMatrix> generators;
  FieldContext ctx;
};

/// A scalar multiple of m of finite order: m itself, or m divided by one of its entries.
inline CycMatrix finite_order_representative(const CycMatrix& m, std::size_t cap = kDefaultCap) {
  std::vector<CycMatrix> cands{m};
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      if (!m.at(i, j).is_zero()) cands.push_back(m.at(i, j).inverse() * m);
  for (const auto& c : cands) {
    CycMatrix x = c;
    for (std::size_t k = 1; k <= cap; ++k) {
      if (auto s = x.scalar_value()) {
        if (s->as_root_of_unity()) return c;
        break;
      }
      x = x * c;
    }
  }
  throw std::invalid_argument("projective generator has no finite-order representative among its entry rescalings; "
                              "give a finite-order matrix");
}

inline MatrixGroup input_group(const GroupInput& in, std::size_t cap = kDefaultCap) {
  std::vector<CycMatrix> g;
  for (const auto& x : in.generators) g.push_back(in.ambient == Ambient::PGL ? finite_order_representative(x, cap) : x);
  return MatrixGroup::closure(g, cap, in.dim);
}

inline ClassificationReport classify(const GroupInput& in, std::size_t cap = kDefaultCap) {
  if (in.dim < 1 || in.dim > 3) throw std::invalid_argument("classification supports dimensions 1 to 3");
  if (in.dim == 3) detail::require_char0(in.ctx);
  MatrixGroup G = input_group(in, cap);
  if (in.ambient == Ambient::GL) {
    if (in.dim == 1) return classify_gl1(G);
    if (in.dim == 2) return classify_gl2(G, in.ctx);
    return classify_gl3(G, in.ctx);
  }
  ProjGroup P = projective_image(G);
  if (in.dim == 1) {
    ClassificationReport R;
    R.ambient = Ambient::PGL;
    R.verdict = Verdict::RhoNeutral;
    R.notes.push_back("PGL1 is trivial");
    return R;
  }
  if (in.dim == 2) return classify_pgl2(P, in.ctx);
  return classify_pgl3(P, in.ctx);
}

/// Rebuild the family group from the reported parameters and compare with Q^-1 G Q.
inline std::optional<bool> recheck(const ClassificationReport& R, const GroupInput& in, std::size_t cap = kDefaultCap) {
  if (R.family.empty() || !R.conjugator) return std::nullopt;
  MatrixGroup G = input_group(in, cap);
  auto fam = family_generators(R.family, R.parameters);
  auto conj = conjugate_all(G.elements(), *R.conjugator);
  if (R.ambient == Ambient::GL) {
    auto F = MatrixGroup::closure(fam, cap, R.dim);
    return same_element_set(conj, F.elements());
  }
  auto F = MatrixGroup::closure(fam, cap, R.dim);
  return same_projective_set(conj, F.elements());
}

// ---------------------------------------------------------------------------
// criterion for diagonal groups

struct CriterionReport {
  Verdict verdict = Verdict::Undetermined;  ///< Neutral or Undetermined, never NotNeutral
  std::vector<Perm> normalizer;
  GLattice lattice;
  SummandResult summand;
  std::optional<IndexBound> bound;        ///< every gerbe index divides bound->product
  std::vector<Perm> bound_subgroup;       ///< S' used for the bound
  std::optional<ZMatrix> bound_sublattice;
};

inline CriterionReport diag_criterion(const DiagonalGroup& D, const SearchOptions& opt = {}) {
  CriterionReport R;
  R.normalizer = normalizer_perms(D);
  R.lattice = character_lattice(D, R.normalizer);
  R.summand = permutation_summand_test(R.lattice, opt);
  if (R.summand.kind == SummandResult::Kind::Yes) {
    R.verdict = Verdict::Neutral;
    return R;
  }
  // best [S:S'] * [X:N] over subgroups S' and permutation S'-sublattices N
  const GLattice& X = R.lattice;
  IntGroup S = X.group();
  auto perm_of = [&](const LMatrix& A) { return perm_of_matrix(A); };
  for (const auto& H : S.table.subgroup_classes()) {
    std::vector<LMatrix> gens;
    for (int g : S.table.generating_set(H)) gens.push_back(S.elements[g]);
    long long iota1 = static_cast<long long>(S.elements.size() / H.size());
    if (R.bound && R.bound->product <= to_z(iota1)) continue;
    std::optional<ZMatrix> N;
    if (H.size() == 1) {
      N = X.basis();
    } else {
      auto sr = permutation_basis_search(X, opt, &gens);
      N = sr.basis ? sr.basis : sr.best_sublattice;
    }
    if (!N) continue;
    IndexBound b = index_bound(X, gens, *N);
    if (!R.bound || b.product < R.bound->product) {
      R.bound = b;
      R.bound_sublattice = N;
      R.bound_subgroup.clear();
      for (int g : H) R.bound_subgroup.push_back(perm_of(S.elements[g]));
    }
  }
  return R;
}

// ---------------------------------------------------------------------------
// presentation conversion for diagonal subgroups of GL2

struct PresentationOne {  ///< ⟨diag(ζ_2m, ζ_2m), diag(ζ_2n, ζ_2n^-1)⟩
  long long m = 1, n = 1;
};
struct PresentationTwo {  ///< ⟨diag(ζ_a,1), diag(1,ζ_a), diag(ζ_2an, ζ_2an^d)⟩
  long long a = 1, n = 1, d = 1;
};

inline DiagonalGroup group_of(const PresentationOne& p) {
  long long L = lcm_ll(2 * p.m, 2 * p.n);
  return DiagonalGroup::from_exponents(2, L, {{L / (2 * p.m), L / (2 * p.m)}, {L / (2 * p.n), -L / (2 * p.n)}});
}
inline DiagonalGroup group_of(const PresentationTwo& p) {
  long long L = 2 * p.a * p.n;
  return DiagonalGroup::from_exponents(2, L, {{2 * p.n, 0}, {0, 2 * p.n}, {1, p.d}});
}

/// d ≡ ±1 modulo every prime power dividing 2n
inline bool pm_one_condition(long long d, long long n) {
  for (auto [p, e] : factorize(2 * n)) {
    long long q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    if (mod_floor(d - 1, q) != 0 && mod_floor(d + 1, q) != 0) return false;
  }
  return true;
}

inline PresentationTwo convert_12(const PresentationOne& p) {
  if (p.m < 1 || p.n < 1) throw std::invalid_argument("convert: m and n must be positive");
  long long a = std::gcd(p.m, p.n), m1 = p.m / a, n1 = p.n / a;
  auto [g, x, y] = ext_gcd(m1, n1);
  (void)g;
  long long n = m1 * n1;
  return {a, n, mod_floor(y * n1 - x * m1, 2 * n)};
}

inline PresentationOne convert_21(const PresentationTwo& p) {
  if (p.a < 1 || p.n < 1) throw std::invalid_argument("convert: a and n must be positive");
  if (!pm_one_condition(p.d, p.n))
    throw std::invalid_argument("convert: d is not +-1 modulo every prime power dividing 2n");
  long long m2 = 1, n2 = 1;
  for (long long q : divisors(2 * p.n)) {
    if (mod_floor(p.d - 1, q) == 0) m2 = q;
    if (mod_floor(p.d + 1, q) == 0) n2 = q;
  }
  long long m1 = m2 / 2, n1 = n2 / 2;
  if (m1 * n1 != p.n) throw std::logic_error("convert: inconsistent divisor split");
  return {p.a * m1, p.a * n1};
}

// ---------------------------------------------------------------------------
// quotient singularities

struct SingularityReport {
  enum class Outcome { SmoothQuotient, TypeR, NotTypeR, Undetermined } outcome = Outcome::Undetermined;
  PseudoReflectionAnalysis reflections;
  std::optional<ClassificationReport> classification;
};

inline std::string to_string(SingularityReport::Outcome o) {
  switch (o) {
    case SingularityReport::Outcome::SmoothQuotient: return "smooth-quotient";
    case SingularityReport::Outcome::TypeR: return "type-R";
    case SingularityReport::Outcome::NotTypeR: return "not-type-R";
    case SingularityReport::Outcome::Undetermined: return "undetermined";
  }
  return "?";
}

inline SingularityReport singularity_type_r(const MatrixGroup& G, const FieldContext& ctx = {}) {
  if (G.dim() > 3) throw std::invalid_argument("singularity: unsupported dimension " + std::to_string(G.dim()));
  if (G.dim() == 3) detail::require_char0(ctx);
  SingularityReport R;
  R.reflections = pseudo_reflection_analysis(G);
  using O = SingularityReport::Outcome;
  if (R.reflections.generates_whole_group) {
    R.outcome = O::SmoothQuotient;
    return R;
  }
  ClassificationReport c = G.dim() == 1 ? classify_gl1(G) : G.dim() == 2 ? classify_gl2(G, ctx) : classify_gl3(G, ctx);
  R.classification = c;
  if (!R.reflections.has_any)
    R.outcome = c.verdict == Verdict::Neutral ? O::TypeR : O::NotTypeR;
  else
    R.outcome = c.verdict == Verdict::NotNeutral ? O::NotTypeR : O::Undetermined;
  return R;
}

}  // namespace nrep
