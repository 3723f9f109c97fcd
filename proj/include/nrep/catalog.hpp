#pragma once

#include "nrep/matgrp.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

namespace nrep {

/// Hessian matrices M0..M5 and the groups they generate, all at level 36.
class HessianCatalog {
 public:
  static constexpr int kLevel = 36;

  static const HessianCatalog& get() {
    static std::once_flag once;
    static std::unique_ptr<HessianCatalog> inst;
    std::call_once(once, [] { inst.reset(new HessianCatalog()); });
    return *inst;
  }

  const CycMatrix& M(int i) const { return M_.at(i); }
  CycNum zeta3() const { return CycNum::zeta(3, 1, kLevel); }
  CycMatrix zeta3_I() const { return CycMatrix::scalar(3, zeta3()); }

  /// ⟨M0..Mi⟩ in GL3 (lift, not the SL3 preimage)
  const MatrixGroup& lift(int i) const { return lifts_.at(i); }
  /// H_i in PGL3
  const ProjGroup& H(int i) const { return H_.at(i); }
  const MatrixGroup& H1_tilde() const { return lifts_[1]; }
  /// ⟨ζ3 I, M0..M4⟩
  const MatrixGroup& H4_tilde() const { return H4t_; }
  /// SL3 preimage of H5
  const MatrixGroup& H5_tilde() const { return H5t_; }

  std::vector<CycMatrix> generators(int i) const { return {M_.begin(), M_.begin() + i + 1}; }

 private:
  HessianCatalog() {
    const int L = kLevel;
    CycNum z3 = CycNum::zeta(3, 1, L), z32 = z3 * z3, one(L, 1), zero(L), m1(L, -1);
    M_[0] = CycMatrix::diagonal({one, z3, z32});
    M_[1] = CycMatrix::from_rows({{zero, zero, one}, {one, zero, zero}, {zero, one, zero}});
    M_[2] = CycMatrix::from_rows({{m1, zero, zero}, {zero, zero, m1}, {zero, m1, zero}});
    CycNum k = (CycNum(L, 2) * z3 + one).inverse();
    M_[3] = k * CycMatrix::from_rows({{one, one, one}, {one, z3, z32}, {one, z32, z3}});
    M_[4] = k * CycMatrix::from_rows({{one, one, z3}, {one, z3, one}, {z32, z3, z3}});
    M_[5] = CycNum::zeta(9, -1, L) * CycMatrix::diagonal({one, one, z3});
    for (int i = 0; i < 6; ++i) {
      lifts_[i] = MatrixGroup::closure(generators(i));
      H_[i] = projective_image(lifts_[i]);
    }
    auto g4 = generators(4);
    g4.insert(g4.begin(), zeta3_I());
    H4t_ = MatrixGroup::closure(g4);
    // the SL3 preimage of H5: scalars of SL3 are ζ3 powers, and M0..M5 already lie in SL3
    auto g5 = generators(5);
    g5.insert(g5.begin(), zeta3_I());
    H5t_ = MatrixGroup::closure(g5);
  }

  std::array<CycMatrix, 6> M_;
  std::array<MatrixGroup, 6> lifts_;
  std::array<ProjGroup, 6> H_;
  MatrixGroup H4t_, H5t_;
};

struct CatalogFact {
  std::string fact;
  bool pass = false;
  std::string value;
};

namespace detail {
inline std::vector<int> sl3_preimage_elements(const ProjGroup& P, const MatrixGroup& ambient) {
  std::vector<int> out;
  for (std::size_t i = 0; i < ambient.order(); ++i) {
    const auto& g = ambient.element(static_cast<int>(i));
    if (g.det().is_one() && P.coset_of(g)) out.push_back(static_cast<int>(i));
  }
  return out;
}
}  // namespace detail

/// Recompute every fact the classification relies on about the Hessian groups.
inline std::vector<CatalogFact> verify_catalog(const HessianCatalog& C = HessianCatalog::get()) {
  std::vector<CatalogFact> out;
  auto add = [&](std::string f, bool ok, std::string v) { out.push_back({std::move(f), ok, std::move(v)}); };
  auto num = [](auto x) { return std::to_string(x); };

  for (int i = 0; i < 6; ++i) {
    CycNum d = C.M(i).det();
    add("det M" + num(i) + " = 1", d.is_one(), d.str());
  }
  const std::array<std::size_t, 6> expect{3, 9, 18, 36, 72, 216};
  for (int i = 1; i < 6; ++i)
    add("|H" + num(i) + "| = " + num(expect[i]), C.H(i).order() == expect[i], num(C.H(i).order()));
  add("|H~1| = 27", C.H1_tilde().order() == 27, num(C.H1_tilde().order()));
  add("|H~4| = 216", C.H4_tilde().order() == 216, num(C.H4_tilde().order()));
  add("|H~5| = 648", C.H5_tilde().order() == 648, num(C.H5_tilde().order()));

  {
    // involutions of H4 and their H1-orbit
    const ProjGroup& H4 = C.H(4);
    const GroupTable& T = H4.table;
    std::vector<int> inv;
    for (std::size_t g = 0; g < T.size(); ++g)
      if (T.element_order(static_cast<int>(g)) == 2) inv.push_back(static_cast<int>(g));
    int m2 = H4.label[*H4.lift.index_of(C.M(2))];
    std::vector<int> h1;  // H1 inside H4
    for (const auto& r : C.H(1).representatives()) h1.push_back(*H4.coset_of(r));
    std::vector<int> orbit;
    for (int h : h1) orbit.push_back(T.conj(m2, h));
    std::sort(orbit.begin(), orbit.end());
    bool free_orbit = std::adjacent_find(orbit.begin(), orbit.end()) == orbit.end();
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    add("H4 has exactly 9 involutions", inv.size() == 9, num(inv.size()));
    add("H1 acts freely and transitively on the involutions of H4", free_orbit && orbit == inv,
        num(orbit.size()) + " in orbit of M2");

    // H4/H1
    std::sort(h1.begin(), h1.end());
    auto [Q, labels] = T.quotient(h1);
    add("H4/H1 is quaternion of order 8", Q.is_quaternion8(),
        "order " + num(Q.size()) + ", involutions " + num(Q.count_of_order(2)));
  }
  {
    const MatrixGroup& G = C.H5_tilde();
    auto P = G.table().sylow(2);
    bool ok = G.table().is_subgroup_abelian(P) == false && P.size() == 8;
    std::size_t invol = 0;
    for (int x : P) invol += G.table().element_order(x) == 2;
    ok = ok && invol == 1;
    // all 2-Sylows are conjugate, so checking conjugates of one is checking all
    add("2-Sylow subgroups of H~5 are quaternion", ok,
        "order " + num(P.size()) + ", involutions " + num(invol));
  }
  {
    CycMatrix z3I = C.zeta3_I();
    CycMatrix lhs = C.M(1) * C.M(0) * C.M(1).inverse();
    CycMatrix rhs = (C.zeta3() * C.zeta3()) * C.M(0);
    add("M1 M0 M1^-1 = z3^2 M0", lhs == rhs, lhs == rhs ? "equal" : "differ");
    CycMatrix comm = C.M(0) * C.M(1) * C.M(0).inverse() * C.M(1).inverse();
    auto s = comm.scalar_value();
    std::string v = "not scalar";
    if (s) {
      auto r = s->as_root_of_unity();
      v = r ? "zeta_" + num(r->order) + "^" + num(r->exponent) + " I" : s->str() + " I";
    }
    add("[M0,M1] = z3 I", comm == z3I, v);
  }
  {
    CycMatrix sq = C.M(3) * C.M(3);
    auto ratio = (sq * C.M(2).inverse()).scalar_value();
    add("M3^2 = M2 in PGL3", ratio.has_value(), ratio ? "M3^2 = (" + ratio->str() + ") M2" : "not proportional");
  }
  {
    // M5 normalizes H1
    const ProjGroup& H1 = C.H(1);
    CycMatrix M5 = C.M(5), M5i = M5.inverse();
    bool ok = true;
    for (const auto& g : C.H1_tilde().generators()) ok = ok && H1.coset_of(M5i * g * M5).has_value();
    add("M5 normalizes H1", ok, ok ? "yes" : "no");
  }
  {
    auto pre = detail::sl3_preimage_elements(C.H(1), C.H5_tilde());
    bool ok = pre.size() == C.H1_tilde().order();
    for (int i : pre) ok = ok && C.H1_tilde().contains(C.H5_tilde().element(i));
    add("H~1 = SL3 preimage of H1", ok, num(pre.size()) + " elements");
  }
  return out;
}

}  // namespace nrep
