// Forms calculus: frozen worked examples (hand-computed coefficients) and the
// seeded identity suite, including runs at dimensions where the higher-degree
// identities have genuine content (deg + 2 <= dim).

#include <gerbeforms/calculus.hpp>
#include <gerbeforms/identity_suite.hpp>

#include <gtest/gtest.h>

using namespace gerbeforms;

namespace {

PolyMat E(int dim, int k, int r, int c, const Poly& p) {
  PolyMat m(k, k, Poly::zero(dim));
  m.at(r - 1, c - 1) = p;
  return m;
}

PolyMat E1(int dim, int k, int r, int c) {
  return E(dim, k, r, c, Poly::constant(dim, Rat(1)));
}

LieForm form1(int dim, int k, Side side, int a, const PolyMat& m) {
  LieForm w(1, dim, k, side);
  w.add_coeff({a}, m);
  return w;
}

Poly var(int dim, int i) { return Poly::variable(dim, i); }

// diag(1, -1)
PolyMat Hmat(int dim) {
  PolyMat m(2, 2, Poly::zero(dim));
  m.at(0, 0) = Poly::constant(dim, Rat(1));
  m.at(1, 1) = Poly::constant(dim, Rat(-1));
  return m;
}

}  // namespace

TEST(Bracket, OffDiagonalPairGivesDiagonal) {
  // [E12 (x) dx1, E21 (x) dx2] = (E11 - E22) (x) dx1^dx2
  int dim = 2, k = 2;
  LieForm a = form1(dim, k, Side::H, 1, E1(dim, k, 1, 2));
  LieForm b = form1(dim, k, Side::H, 2, E1(dim, k, 2, 1));
  LieForm out = bracket(a, b);
  LieForm expect(2, dim, k, Side::H);
  expect.add_coeff({1, 2}, Hmat(dim));
  EXPECT_EQ(out, expect);
}

TEST(Bracket, CrossedPairingAgainstCartanElement) {
  // [H (x) dx2, E12 (x) dx1] = -2 E12 (x) dx1^dx2 (A-side acts first).
  int dim = 2, k = 2;
  InnerCrossedModule cm(k);
  LieForm u = form1(dim, k, Side::A, 2, Hmat(dim));
  LieForm w = form1(dim, k, Side::H, 1, E1(dim, k, 1, 2));
  LieForm out = act_bracket(cm, u, w);
  LieForm expect(2, dim, k, Side::H);
  expect.add_coeff({1, 2}, E(dim, k, 1, 2, Poly::constant(dim, Rat(-2))));
  EXPECT_EQ(out, expect);
}

TEST(Bracket, DegreeZeroPairing) {
  // [H (x) dx1, I + x2 E12] = 2 x2 E12 (x) dx1.
  int dim = 2, k = 2;
  InnerCrossedModule cm(k);
  LieForm u = form1(dim, k, Side::A, 1, Hmat(dim));
  GroupMap g = group_shear(Side::H, k, dim, 1, 2, var(dim, 2));
  LieForm out = act_bracket0(cm, u, g);
  LieForm expect =
      form1(dim, k, Side::H, 1,
            E(dim, k, 1, 2, Poly::constant(dim, Rat(2)) * var(dim, 2)));
  EXPECT_EQ(out, expect);
  EXPECT_EQ(group_pair_form(cm, g, u), -out);
}

TEST(Differential, LogDerivativeOfShear) {
  // d0(I + x1 E12) = E12 (x) dx1; the right variant agrees here since the
  // group is abelian in this single-shear case.
  int dim = 2, k = 2;
  GroupMap g = group_shear(Side::H, k, dim, 1, 2, var(dim, 1));
  LieForm expect = form1(dim, k, Side::H, 1, E1(dim, k, 1, 2));
  EXPECT_EQ(d0(g), expect);
  EXPECT_EQ(d0_tilde(g), expect);
  EXPECT_EQ(g_dginv(g), -expect);
}

TEST(Differential, QuadraticOnLinearCoefficient) {
  // d1(E12 (x) x2 dx1) = -E12 (x) dx1^dx2.
  int dim = 2, k = 2;
  LieForm w = form1(dim, k, Side::H, 1, E(dim, k, 1, 2, var(dim, 2)));
  LieForm expect(2, dim, k, Side::H);
  expect.add_coeff({1, 2}, E(dim, k, 1, 2, Poly::constant(dim, Rat(-1))));
  EXPECT_EQ(d1(w), expect);
}

TEST(Differential, QuadraticTermProducesDiagonal) {
  // d1(E12 (x) dx1 + E21 (x) dx2) = (E11 - E22) (x) dx1^dx2.
  int dim = 2, k = 2;
  LieForm w = form1(dim, k, Side::H, 1, E1(dim, k, 1, 2)) +
              form1(dim, k, Side::H, 2, E1(dim, k, 2, 1));
  LieForm expect(2, dim, k, Side::H);
  expect.add_coeff({1, 2}, Hmat(dim));
  EXPECT_EQ(d1(w), expect);
}

TEST(Differential, TwistContributesCrossedPairing) {
  // d1_{i(H (x) dx2)}(E12 (x) dx1) = -2 E12 (x) dx1^dx2.
  int dim = 2, k = 2;
  InnerCrossedModule cm(k);
  LieForm w = form1(dim, k, Side::H, 1, E1(dim, k, 1, 2));
  LieForm m = i_push(cm, form1(dim, k, Side::H, 2, Hmat(dim)));
  LieForm expect(2, dim, k, Side::H);
  expect.add_coeff({1, 2}, E(dim, k, 1, 2, Poly::constant(dim, Rat(-2))));
  EXPECT_EQ(dn_m(cm, w, m), expect);
}

TEST(Conjugation, AdjointBySingleShear) {
  // ^(I + x1 E12)(E21 (x) dx2) = (E21 + x1 (E11 - E22) - x1^2 E12) (x) dx2.
  int dim = 2, k = 2;
  GroupMap g = group_shear(Side::H, k, dim, 1, 2, var(dim, 1));
  LieForm w = form1(dim, k, Side::H, 2, E1(dim, k, 2, 1));
  PolyMat m(2, 2, Poly::zero(dim));
  m.at(0, 0) = var(dim, 1);
  m.at(0, 1) = -(var(dim, 1) * var(dim, 1));
  m.at(1, 0) = Poly::constant(dim, Rat(1));
  m.at(1, 1) = -var(dim, 1);
  LieForm expect = form1(dim, k, Side::H, 2, m);
  EXPECT_EQ(adjoint(g, w), expect);
  EXPECT_EQ(adjoint_right(group_inverse(g), w), expect);
}

TEST(Conjugation, TwistedConjugateAddsLogTerm) {
  // ^(g*)w = ^g w + g dg^{-1}: same as above minus E12 (x) dx1.
  int dim = 2, k = 2;
  GroupMap g = group_shear(Side::H, k, dim, 1, 2, var(dim, 1));
  LieForm w = form1(dim, k, Side::H, 2, E1(dim, k, 2, 1));
  LieForm out = twisted_conjugate(g, w);
  LieForm expect = adjoint(g, w) - form1(dim, k, Side::H, 1, E1(dim, k, 1, 2));
  EXPECT_EQ(out, expect);
}

TEST(Forms, DegreeBeyondDimensionIsVacuous) {
  LieForm w(3, 2, 2, Side::H);
  EXPECT_TRUE(w.vacuous());
  EXPECT_TRUE(w.is_zero());
  EXPECT_THROW(w.add_coeff({1, 2, 3}, PolyMat(2, 2, Poly::zero(2))), gf_error);
}

TEST(Forms, TupleValidation) {
  LieForm w(2, 3, 2, Side::H);
  PolyMat m = E1(3, 2, 1, 2);
  EXPECT_THROW(w.add_coeff({2, 1}, m), gf_error);   // not increasing
  EXPECT_THROW(w.add_coeff({1, 1}, m), gf_error);   // repeated
  EXPECT_THROW(w.add_coeff({1, 4}, m), gf_error);   // out of range
  EXPECT_THROW(w.add_coeff({1}, m), gf_error);      // wrong arity
  w.add_coeff({1, 3}, m);
  EXPECT_EQ(w.coeff({1, 3}), m);
  EXPECT_TRUE(w.coeff({2, 3}).is_zero());
}

TEST(Forms, SideMismatchesRejected) {
  InnerCrossedModule cm(2);
  int dim = 2;
  LieForm h = form1(dim, 2, Side::H, 1, E1(dim, 2, 1, 2));
  LieForm a = form1(dim, 2, Side::A, 1, E1(dim, 2, 1, 2));
  EXPECT_THROW(bracket(h, a), gf_error);
  EXPECT_THROW(act_bracket(cm, h, a), gf_error);
  EXPECT_THROW(h + a, gf_error);
  GroupMap ga = group_identity(Side::A, 2, dim);
  EXPECT_THROW(adjoint(ga, h), gf_error);
}

TEST(IdentitySuite, StandardDimension) {
  IdentityParams p;
  p.seed = 2024;
  p.trials = 12;
  p.dim = 3;
  p.size = 3;
  p.maxdeg = 2;
  for (const Record& r : run_identity_suite(p))
    EXPECT_TRUE(r.pass) << r.equation << " " << r.witness;
}

TEST(IdentitySuite, AbelianValuesToo) {
  // The suite fixes the conjugation instance; run key identities by hand on
  // the unipotent-abelian instance, where all crossed pairings vanish.
  AbelianCrossedModule cm;
  Rng rng(7);
  int dim = 3;
  for (int t = 0; t < 10; ++t) {
    Rng r = rng.child(t);
    LieForm w = sample_lie_form(cm, r, 1, dim, Side::H, 2);
    LieForm m = sample_lie_form(cm, r, 1, dim, Side::A, 2);
    GroupMap g = cm.sample_h(r, dim, 2);
    EXPECT_TRUE(bracket(w, w).is_zero());  // values commute
    EXPECT_TRUE(d1(d0(g)).is_zero());
    EXPECT_TRUE((dn_m(cm, w, m) - d1(w)).is_zero());  // trivial twist
    EXPECT_TRUE(dn_m(cm, d1(w), i_push(cm, w)).is_zero());
  }
}

TEST(IdentitySuite, HigherDimensionContent) {
  // dim = 4 gives d o d = 0 and the degree->=2 curvature identity genuine
  // content (4-form outputs alive).
  IdentityParams p;
  p.seed = 77;
  p.trials = 4;
  p.dim = 4;
  p.size = 2;
  p.maxdeg = 1;
  for (const Record& r : run_identity_suite(p))
    EXPECT_TRUE(r.pass) << r.equation << " " << r.witness;

  // Witness that the dndn1 check is non-vacuous at dim 4: the two sides are
  // individually nonzero for a generic sample.
  InnerCrossedModule cm(2);
  Rng rng(5);
  LieForm t1 = sample_lie_form(cm, rng, 2, 4, Side::H, 1);
  LieForm m = sample_lie_form(cm, rng, 1, 4, Side::A, 1);
  EXPECT_FALSE(act_bracket(cm, d1(m), t1).is_zero());
  EXPECT_EQ(dn_m(cm, dn_m(cm, t1, m), m), act_bracket(cm, d1(m), t1));
}

TEST(IdentitySuite, LeibnizContentAtDimensionFive) {
  // The degree >= 2 Leibniz rule needs dim >= 5 for a nonzero 5-form output.
  InnerCrossedModule cm(2);
  Rng rng(9);
  LieForm a = sample_lie_form(cm, rng, 2, 5, Side::H, 1);
  LieForm b = sample_lie_form(cm, rng, 2, 5, Side::H, 1);
  LieForm lhs = d(bracket(a, b));
  EXPECT_FALSE(lhs.is_zero());
  EXPECT_EQ(lhs, bracket(d(a), b) + bracket(a, d(b)));

  // Classical low-degree derivation property of the plain exterior
  // derivative, as an internal sanity check of d and the bracket.
  LieForm w1 = sample_lie_form(cm, rng, 1, 3, Side::H, 2);
  LieForm w2 = sample_lie_form(cm, rng, 1, 3, Side::H, 2);
  EXPECT_EQ(d(bracket(w1, w2)), bracket(d(w1), w2) - bracket(w1, d(w2)));
}
