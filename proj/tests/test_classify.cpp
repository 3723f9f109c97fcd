#include "nrep/classify.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nrep;

namespace {

const HessianCatalog& cat() { return HessianCatalog::get(); }
CycMatrix dr(long long M, std::vector<long long> e) { return CycMatrix::diagonal_roots(M, e); }
CycMatrix scal(int n, long long k, long long N) { return CycMatrix::scalar(n, CycNum::zeta(N, k)); }

GroupInput gl(std::vector<CycMatrix> g, FieldContext ctx = {}) { return {Ambient::GL, g[0].dim(), g, ctx}; }
GroupInput pgl(std::vector<CycMatrix> g, FieldContext ctx = {}) { return {Ambient::PGL, g[0].dim(), g, ctx}; }

void expect_recheck(const ClassificationReport& r, const GroupInput& in) {
  auto ok = recheck(r, in);
  ASSERT_TRUE(ok.has_value()) << r.family;
  EXPECT_TRUE(*ok) << r.family;
}

std::vector<CycMatrix> conj_by(const std::vector<CycMatrix>& g, const CycMatrix& Q) { return conjugate_all(g, Q); }

CycMatrix shear3() {
  CycNum o(1, 1), z(1);
  return CycMatrix::from_rows({{o, o, z}, {z, o, o}, {z, z, o}});
}

}  // namespace

TEST(Classify, GL1) {
  EXPECT_EQ(classify(gl({dr(5, {1})})).verdict, Verdict::Neutral);
  EXPECT_EQ(classify(gl({CycMatrix::identity(1)})).verdict, Verdict::Neutral);
  EXPECT_EQ(classify(gl({dr(2, {1})})).verdict, Verdict::Neutral);
}

TEST(Classify, PGL2Table) {
  auto c2 = classify(pgl({dr(2, {0, 1})}));
  EXPECT_EQ(c2.verdict, Verdict::NotNeutral);
  EXPECT_EQ(c2.family, "PGL2-cyclic-even");
  expect_recheck(c2, pgl({dr(2, {0, 1})}));
  EXPECT_EQ(classify(pgl({dr(3, {0, 1})})).verdict, Verdict::NeutralNotRhoNeutral);
  auto klein = classify(pgl({dr(2, {0, 1}), CycMatrix::permutation({1, 0})}));
  EXPECT_EQ(klein.verdict, Verdict::RhoNeutral);
  for (long long n = 2; n <= 6; ++n) {
    auto r = classify(pgl({dr(n, {0, 1})}));
    EXPECT_EQ(r.verdict, n % 2 ? Verdict::NeutralNotRhoNeutral : Verdict::NotNeutral) << n;
    EXPECT_EQ(*r.param("n"), n);
  }
  // characteristic dividing the order
  EXPECT_EQ(classify(pgl({dr(3, {0, 1})}, {3, false})).verdict, Verdict::RhoNeutral);
  EXPECT_EQ(classify(pgl({dr(4, {0, 1})}, {2, false})).verdict, Verdict::RhoNeutral);
}

TEST(Classify, GL2Examples) {
  auto in = gl({scal(2, 1, 4), dr(6, {5, 1})});
  auto r = classify(in);
  EXPECT_EQ(r.verdict, Verdict::NotNeutral);
  EXPECT_EQ(r.family, "GL2-main");
  EXPECT_EQ(*r.param("m"), 2);
  EXPECT_EQ(*r.param("n"), 3);
  expect_recheck(r, in);

  EXPECT_EQ(classify(gl({dr(3, {1, 2})})).verdict, Verdict::Neutral);

  auto in2 = gl({dr(4, {1, 3})});
  auto r2 = classify(in2);
  EXPECT_EQ(r2.verdict, Verdict::NotNeutral);
  EXPECT_EQ(*r2.param("m"), 1);
  EXPECT_EQ(*r2.param("n"), 2);
  expect_recheck(r2, in2);

  EXPECT_EQ(classify(gl({dr(4, {1, 3})}, {2, false})).verdict, Verdict::Neutral);
  // non-abelian
  EXPECT_EQ(classify(gl({dr(4, {1, 3}), CycMatrix::permutation({1, 0})})).verdict, Verdict::Neutral);
}

TEST(Classify, GL2FamilySweep) {
  std::mt19937 rng(11);
  for (long long m = 1; m <= 100; ++m)
    for (long long n = 1; 2 * m * n <= 200; ++n) {
      auto F = family::gl2_main(m, n);
      auto gens = diagonal_matrices(F);
      // hide the diagonal form behind a random swap
      if (rng() % 2) gens = conj_by(gens, CycMatrix::permutation({1, 0}));
      auto in = gl(gens);
      auto r = classify(in);
      ASSERT_EQ(r.verdict, Verdict::NotNeutral) << m << "," << n;
      EXPECT_TRUE(equals_up_to_permutation(F, family::gl2_main(*r.param("m"), *r.param("n"))).has_value());
      if ((m * n) % 7 == 0) expect_recheck(r, in);
    }
}

TEST(Classify, GL2Perturbation) {
  for (auto [m, n] : std::vector<std::pair<long long, long long>>{{2, 2}, {2, 4}, {4, 2}, {4, 6}, {6, 4}, {2, 6}})
    for (long long alpha : {1, 3}) {
      long long L = lcm_ll(2 * m, 2 * n);
      // ζ_m I and ζ_2m^α diag(ζ_2n^-1, ζ_2n)
      ExpVec x{L / m, L / m};
      ExpVec y{alpha * (L / (2 * m)) - L / (2 * n), alpha * (L / (2 * m)) + L / (2 * n)};
      auto D = DiagonalGroup::from_exponents(2, L, {x, y});
      auto r = classify(gl(diagonal_matrices(D)));
      EXPECT_EQ(r.verdict, Verdict::Neutral) << m << "," << n << "," << alpha;
      auto c = diag_criterion(D);
      ASSERT_EQ(c.verdict, Verdict::Neutral);
      // the explicit basis ((m+n)/2, (m-n)/2), ((m-n)/2, (m+n)/2) lies in X and has index mn = |G|
      ZMatrix B{{to_z((m + n) / 2), to_z((m - n) / 2)}, {to_z((m - n) / 2), to_z((m + n) / 2)}};
      EXPECT_EQ(D.order(), m * n);
      EXPECT_EQ(mpz_class(abs(determinant(B))), to_z(m * n));
      for (const auto& row : B.to_rows()) EXPECT_TRUE(c.lattice.coordinates(row).has_value());
    }
}

TEST(Classify, PGL3Examples) {
  auto e = classify(pgl({dr(7, {1, 3, 0})}));
  EXPECT_EQ(e.family, "PGL3-e");
  EXPECT_EQ(e.verdict, Verdict::NeutralNotRhoNeutral);
  EXPECT_EQ(*e.param("a"), 1);
  EXPECT_EQ(*e.param("n"), 7);
  EXPECT_EQ(*e.param("d"), 3);
  expect_recheck(e, pgl({dr(7, {1, 3, 0})}));

  auto h2 = pgl(cat().generators(2));
  auto c = classify(h2);
  EXPECT_EQ(c.family, "PGL3-c");
  EXPECT_EQ(c.verdict, Verdict::NotNeutral);
  expect_recheck(c, h2);

  auto d1 = classify(pgl(cat().generators(3), {0, true}));
  EXPECT_EQ(d1.family, "PGL3-d");
  EXPECT_EQ(d1.verdict, Verdict::RhoNeutral);
  EXPECT_EQ(classify(pgl(cat().generators(3))).verdict, Verdict::NotNeutral);

  // H1 and H4 are of none of the types
  EXPECT_EQ(classify(pgl(cat().generators(1))).verdict, Verdict::RhoNeutral);
  EXPECT_EQ(classify(pgl(cat().generators(4))).verdict, Verdict::RhoNeutral);
  // type b: m = 1, n = 3
  auto b = classify(pgl(diagonal_matrices(family::pgl3_b(1, 3))));
  EXPECT_EQ(b.family, "PGL3-b");
  // type a: a = 3, n = 1
  auto a = classify(pgl(diagonal_matrices(family::pgl3_ae(3, 1, 0))));
  EXPECT_EQ(a.family, "PGL3-a");
  EXPECT_EQ(a.verdict, Verdict::NotNeutral);

  EXPECT_THROW(classify(pgl(cat().generators(2), {5, false})), std::invalid_argument);
}

TEST(Classify, PGL3ConjugationInvariance) {
  std::mt19937 rng(5);
  std::vector<std::vector<CycMatrix>> inputs{cat().generators(2), cat().generators(3),
                                             diagonal_matrices(family::pgl3_ae(1, 7, 3)),
                                             diagonal_matrices(family::pgl3_b(2, 1))};
  for (const auto& g : inputs) {
    auto base = classify(pgl(g));
    for (int k = 0; k < 3; ++k) {
      auto perms = all_perms(3);
      CycMatrix Q = CycMatrix::permutation(perms[rng() % 6]) *
                    dr(12, {static_cast<long long>(rng() % 12), static_cast<long long>(rng() % 12), 0});
      if (k == 2) Q = Q * shear3();
      auto in = pgl(conj_by(g, Q));
      auto r = classify(in);
      EXPECT_EQ(r.family, base.family);
      EXPECT_EQ(r.verdict, base.verdict);
      expect_recheck(r, in);
    }
  }
}

TEST(Classify, GL3Examples) {
  auto in = gl({dr(2, {1, 1, 0})});
  auto r = classify(in);
  EXPECT_EQ(r.verdict, Verdict::NotNeutral);
  EXPECT_EQ(r.family, "GL3-ii");
  EXPECT_EQ(r.parameters, (Params{{"m", 1}, {"n", 1}, {"c1", 0}, {"c2", 1}}));
  expect_recheck(r, in);

  for (long long c : {1, 2, 3}) {
    auto g = family::gl3_hessian(c, 2);
    auto rc = classify(gl(g));
    EXPECT_EQ(rc.verdict, Verdict::NotNeutral) << c;
    EXPECT_EQ(rc.family, "GL3-iii");
    EXPECT_EQ(*rc.param("c"), c);
    expect_recheck(rc, gl(g));
    // same after a non-monomial change of basis
    auto g2 = conj_by(g, shear3());
    auto rc2 = classify(gl(g2));
    EXPECT_EQ(rc2.family, "GL3-iii");
    expect_recheck(rc2, gl(g2));
  }
  EXPECT_EQ(classify(gl({cat().M(0), cat().M(1)})).verdict, Verdict::Neutral);

  auto g4 = family::gl3_hessian(1, 3);
  auto r4 = classify(gl(g4));
  EXPECT_EQ(r4.family, "GL3-iv");
  EXPECT_EQ(r4.verdict, Verdict::NotNeutral);
  expect_recheck(r4, gl(g4));
  EXPECT_EQ(classify(gl(g4, {0, true})).verdict, Verdict::Neutral);

  // ⟨ζ3 I, M0, M1, -M2⟩ has image H2 but is not an SL3^(c) preimage
  auto odd = gl({scal(3, 1, 3), cat().M(0), cat().M(1), CycNum(1, -1) * cat().M(2)});
  auto ro = classify(odd);
  EXPECT_EQ(ro.verdict, Verdict::Neutral);
  EXPECT_TRUE(ro.family.empty());

  auto g1 = diagonal_matrices(sl_preimage({{3}, {1}, ProjDiagonalGroup::from_exponents(3, 7, {{1, 3, 0}})}));
  auto ri = classify(gl(g1));
  EXPECT_EQ(ri.family, "GL3-i");
  EXPECT_EQ(*ri.param("c"), 1);
  expect_recheck(ri, gl(g1));

  EXPECT_THROW(classify(gl({dr(2, {1, 1, 0})}, {5, false})), std::invalid_argument);
}

TEST(Classify, GL3FamilyOneMatchesExplicitGenerators) {
  // ζ_3c I, x = diag(ζ_3a², ζ_3a^-1, ζ_3a^-1), y = x permuted, z = diag(ζ_3an^(2-d), ζ_3an^(2d-1), ζ_3an^(-d-1))
  for (long long c : {1, 2})
    for (long long a : {1, 2, 3})
      for (long long n : {1, 3, 7, 13})
        for (long long d = 0; d < n; ++d) {
          if ((d * d - d + 1) % n) continue;
          long long L = 3 * c * a * n;
          ExpVec w(3, L / (3 * c));
          long long u = L / (3 * a), v = L / (3 * a * n);
          ExpVec x{2 * u, -u, -u}, y{-u, 2 * u, -u}, z{(2 - d) * v, (2 * d - 1) * v, (-d - 1) * v};
          auto E = MatrixGroup::closure(diagonal_matrices(DiagonalGroup::from_exponents(3, L, {w, x, y, z})));
          auto F = family::gl3_i(c, a, n, d);
          ASSERT_EQ(E.order(), static_cast<std::size_t>(F.order()));
          EXPECT_EQ(F.order(), 3 * c * a * a * n);
          for (const auto& e : F.elements()) EXPECT_TRUE(E.contains(CycMatrix::diagonal_roots(F.level(), e)));
        }
}

TEST(Classify, GL3AgreesWithPGL3) {
  std::vector<std::vector<CycMatrix>> inputs{
      {dr(2, {1, 1, 0})},
      family::gl3_hessian(2, 2),
      family::gl3_hessian(1, 3),
      diagonal_matrices(family::gl3_i(1, 1, 7, 3)),
      diagonal_matrices(family::gl3_i(2, 3, 1, 0)),
      diagonal_matrices(family::gl3_ii(2, 3, 1, 1)),
  };
  for (const auto& g : inputs) {
    auto r = classify(gl(g));
    ASSERT_EQ(r.verdict, Verdict::NotNeutral) << r.family;
    auto p = classify(pgl(g));
    EXPECT_NE(p.verdict, Verdict::RhoNeutral) << r.family << " -> " << p.family;
    EXPECT_FALSE(p.family.empty());
  }
}

TEST(Classify, DiagCriterion) {
  auto D = DiagonalGroup::from_exponents(2, 2, {{1, 1}, {0, 1}});
  auto c = diag_criterion(D);
  EXPECT_EQ(c.verdict, Verdict::Neutral);
  EXPECT_EQ(*c.summand.basis, (ZMatrix{{2, 0}, {0, 2}}));

  auto E = sl_preimage({{3}, {1}, ProjDiagonalGroup::from_exponents(3, 7, {{1, 3, 0}})});
  auto u = diag_criterion(E);
  EXPECT_EQ(u.verdict, Verdict::Undetermined);
  EXPECT_EQ(u.normalizer.size(), 3u);
  ASSERT_TRUE(u.summand.witness.has_value());
  EXPECT_FALSE(u.summand.witness->h1.empty());
  ASSERT_TRUE(u.bound.has_value());
  EXPECT_EQ(mpz_class(u.bound->product % 3), 0);  // index 3 gerbes exist, so the bound must allow them

  auto t = diag_criterion(DiagonalGroup::from_exponents(1, 1, {}));
  EXPECT_EQ(t.verdict, Verdict::Neutral);
  EXPECT_EQ(*t.summand.basis, (ZMatrix{{1}}));
  EXPECT_THROW(diag_criterion(DiagonalGroup::from_exponents(2, 3, {{1, 1}})), std::invalid_argument);
}

TEST(Classify, ConvertPresentation) {
  auto two = convert_12({2, 3});
  EXPECT_EQ(two.a, 1);
  EXPECT_EQ(two.n, 6);
  EXPECT_EQ(two.d, 5);
  auto one = convert_21({1, 6, 5});
  EXPECT_EQ(one.m, 2);
  EXPECT_EQ(one.n, 3);
  auto t = convert_12({1, 1});
  EXPECT_EQ(t.a, 1);
  EXPECT_EQ(t.n, 1);
  EXPECT_EQ(t.d % 2, 1);
  EXPECT_TRUE(group_of(PresentationOne{1, 1}) == group_of(t));
  EXPECT_THROW(convert_21({1, 6, 3}), std::invalid_argument);
  EXPECT_TRUE(group_of(PresentationOne{2, 3}) == group_of(two));
}

TEST(Classify, Singularity) {
  auto s = singularity_type_r(MatrixGroup::closure({dr(2, {0, 1})}));
  EXPECT_EQ(s.outcome, SingularityReport::Outcome::SmoothQuotient);
  auto t = singularity_type_r(MatrixGroup::closure({dr(4, {1, 3})}));
  EXPECT_EQ(t.outcome, SingularityReport::Outcome::NotTypeR);
  auto u = singularity_type_r(MatrixGroup::closure({scal(2, 1, 3)}));
  EXPECT_EQ(u.outcome, SingularityReport::Outcome::TypeR);
  // reflections present but not generating: ⟨diag(-1,1), diag(1,i)... ⟩ vs a case with a NotNeutral verdict
  auto v = singularity_type_r(MatrixGroup::closure({dr(4, {2, 0}), scal(2, 1, 4)}));
  EXPECT_TRUE(v.reflections.has_any);
  EXPECT_FALSE(v.reflections.generates_whole_group);
  EXPECT_NE(v.outcome, SingularityReport::Outcome::TypeR);
  EXPECT_THROW(singularity_type_r(MatrixGroup::closure({CycMatrix::identity(4)})), std::invalid_argument);
}
