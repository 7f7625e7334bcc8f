// Tests for the infinitesimal-simplex representation: lifting classical
// forms to group-like Weil matrices, the face-product differentials, and the
// extraction back to classical coefficients. Frozen values were computed by
// hand in the two-slot Weil ring; dual-route checks compare the whole
// combinatorial pipeline against the independent classical formulas.
#include <gerbeforms/equiv_suite.hpp>
#include <gerbeforms/simplicial.hpp>

#include <gtest/gtest.h>

using namespace gerbeforms;

namespace {

Poly cst(int dim, long v) { return Poly::constant(dim, Rat(v)); }
Poly var(int dim, int i) { return Poly::variable(dim, i); }
WeilElement gen(int n, int d, int i, int a) {
  return WeilElement::generator(n, d, i, a);
}

WeilMat weil_identity(int msize, int slots, int dim) {
  return WeilMat::identity(msize, WeilElement::one(slots, dim));
}

bool is_identity(const WeilMat& m) {
  return m == weil_identity(m.rows(), m.at(0, 0).slots(), m.at(0, 0).dim());
}

// Scalar abelian 1-form x2 dx1 in two variables.
LieForm scalar_form() {
  LieForm w(1, 2, 1, Side::H);
  PolyMat c(1, 1, Poly::zero(2));
  c.at(0, 0) = var(2, 2);
  w.add_coeff({1}, c);
  return w;
}

PolyMat e12(int dim) {
  PolyMat m(2, 2, Poly::zero(dim));
  m.at(0, 1) = cst(dim, 1);
  return m;
}

PolyMat e21(int dim) {
  PolyMat m(2, 2, Poly::zero(dim));
  m.at(1, 0) = cst(dim, 1);
  return m;
}

}  // namespace

TEST(TaylorShift, ExactAndMultiplicative) {
  Rng rng(31);
  for (int t = 0; t < 30; ++t) {
    Poly p = sample_poly(rng, 3, 3);
    Poly q = sample_poly(rng, 3, 3);
    EXPECT_EQ(weil_taylor_shift(p * q, 2, 1),
              weil_taylor_shift(p, 2, 1) * weil_taylor_shift(q, 2, 1));
    EXPECT_EQ(weil_taylor_shift(p + q, 2, 2),
              weil_taylor_shift(p, 2, 2) + weil_taylor_shift(q, 2, 2));
  }
  // Slot 0 embeds the polynomial unchanged.
  Poly p = var(2, 1) * var(2, 2);
  EXPECT_EQ(weil_taylor_shift(p, 2, 0), WeilElement::from_poly(2, p));
}

TEST(Lift, SingleGeneratorContraction) {
  // E12 (x) dx1 lifts to I + E12 * d(1,1) at the canonical points.
  LieForm w(1, 1, 2, Side::H);
  w.add_coeff({1}, e12(1));
  WeilMat f = comb_lift(w).eval(1, {0, 1});
  WeilMat expect = weil_identity(2, 1, 1);
  expect.at(0, 1) += gen(1, 1, 1, 1);
  EXPECT_EQ(f, expect);
}

TEST(Lift, ScalarEvaluationWithShiftedBase) {
  // For x2 dx1 based at the first neighbor, the coefficient is Taylor
  // shifted and the slot difference expands with the reordering sign.
  CombForm f = comb_lift(scalar_form());
  WeilMat at01 = f.eval(2, {0, 1});
  WeilElement expect01 = WeilElement::one(2, 2) + var(2, 2) * gen(2, 2, 1, 1);
  EXPECT_EQ(at01.at(0, 0), expect01);

  WeilMat at12 = f.eval(2, {1, 2});
  WeilElement expect12 = WeilElement::one(2, 2) -
                         var(2, 2) * gen(2, 2, 1, 1) +
                         var(2, 2) * gen(2, 2, 2, 1) -
                         gen(2, 2, 1, 1) * gen(2, 2, 2, 2);
  EXPECT_EQ(at12.at(0, 0), expect12);
}

TEST(Lift, ZeroFormIsConstantIdentity) {
  CombForm f = comb_lift(lie_form_zero(1, 3, 2, Side::H));
  EXPECT_TRUE(is_identity(f.eval(2, {0, 1})));
  EXPECT_TRUE(is_identity(f.eval(3, {2, 3})));
  CombForm f2 = comb_lift(lie_form_zero(2, 3, 2, Side::H));
  EXPECT_TRUE(is_identity(f2.eval(3, {0, 1, 2})));
}

TEST(Lift, DegenerateConfigurationsCollapse) {
  InnerCrossedModule cm(2);
  Rng rng(41);
  LieForm w = sample_lie_form(cm, rng, 1, 3, Side::H, 2);
  CombForm f = comb_lift(w);
  EXPECT_TRUE(is_identity(f.eval(2, {1, 1})));
  EXPECT_TRUE(is_identity(f.eval(2, {0, 0})));

  LieForm t = sample_lie_form(cm, rng, 2, 3, Side::H, 2);
  CombForm g = comb_lift(t);
  EXPECT_TRUE(is_identity(g.eval(2, {0, 1, 1})));
  EXPECT_TRUE(is_identity(g.eval(2, {1, 1, 2})));
  EXPECT_TRUE(is_identity(g.eval(2, {2, 1, 2})));
  EXPECT_TRUE(is_identity(g.eval(2, {1, 0, 1})));
}

TEST(Lift, PermutationActsByInversion) {
  InnerCrossedModule cm(2);
  Rng rng(43);
  LieForm w = sample_lie_form(cm, rng, 1, 3, Side::H, 2);
  CombForm f = comb_lift(w);
  EXPECT_EQ(f.eval(2, {2, 1}), weil_mat_inverse(f.eval(2, {1, 2})));
  EXPECT_EQ(f.eval(1, {1, 0}), weil_mat_inverse(f.eval(1, {0, 1})));

  LieForm t = sample_lie_form(cm, rng, 2, 3, Side::H, 2);
  CombForm g = comb_lift(t);
  WeilMat base = g.eval(3, {0, 1, 2});
  EXPECT_EQ(g.eval(3, {0, 2, 1}), weil_mat_inverse(base));
  EXPECT_EQ(g.eval(3, {1, 0, 2}), weil_mat_inverse(base));
  // A 3-cycle has positive signature and leaves the value unchanged.
  EXPECT_EQ(g.eval(3, {1, 2, 0}), base);
}

TEST(Extract, RoundTripsLift) {
  InnerCrossedModule cm(2);
  Rng rng(47);
  for (int deg = 1; deg <= 3; ++deg) {
    LieForm w = sample_lie_form(cm, rng, deg, 3, Side::H, 2);
    ExtractResult res = comb_extract(comb_lift(w));
    EXPECT_TRUE(res.ok) << res.witness;
    EXPECT_EQ(res.form, w);
  }
}

TEST(Extract, ReadsSingleGeneratorForm) {
  // I + E12 * d(1,1) extracts to E12 (x) dx1.
  CombForm f(1, 1, 2, Side::H, [](int slots, const std::vector<int>&) {
    WeilMat m = WeilMat::identity(2, WeilElement::one(slots, 1));
    m.at(0, 1) += gen(slots, 1, 1, 1);
    return m;
  });
  ExtractResult res = comb_extract(f);
  ASSERT_TRUE(res.ok) << res.witness;
  LieForm want(1, 1, 2, Side::H);
  want.add_coeff({1}, e12(1));
  EXPECT_EQ(res.form, want);
}

TEST(Extract, RejectsNonSimplicialValue) {
  // A value with a sub-simplex term (one slot missing) fails the
  // degeneracy verification and reports where.
  CombForm f(2, 2, 1, Side::H, [](int slots, const std::vector<int>&) {
    WeilMat m = WeilMat::identity(1, WeilElement::one(slots, 2));
    m.at(0, 0) += gen(slots, 2, 1, 1);  // survives identifying point 2
    return m;
  });
  ExtractResult res = comb_extract(f);
  EXPECT_FALSE(res.ok);
  // First violation found: the bad term survives identifying point 1 with 2.
  EXPECT_NE(res.witness.find("identifying point 1 with 2"), std::string::npos);
  EXPECT_NE(res.witness.find("d(2,1)"), std::string::npos);
}

TEST(CombDifferential, ScalarWorkedExample) {
  // The three-factor product for x2 dx1 collapses to 1 - d(1,1)d(2,2), and
  // extraction reads off the classical differential -dx1^dx2.
  LieForm w = scalar_form();
  CombForm df = comb_d(comb_lift(w));
  WeilMat value = df.eval(2, {0, 1, 2});
  WeilElement expect =
      WeilElement::one(2, 2) - gen(2, 2, 1, 1) * gen(2, 2, 2, 2);
  EXPECT_EQ(value.at(0, 0), expect);

  ExtractResult res = comb_extract(df);
  ASSERT_TRUE(res.ok) << res.witness;
  LieForm want(2, 2, 1, Side::H);
  PolyMat c(1, 1, Poly::zero(2));
  c.at(0, 0) = cst(2, -1);
  want.add_coeff({1, 2}, c);
  EXPECT_EQ(res.form, want);
  EXPECT_EQ(res.form, d1(w));
  EXPECT_EQ(res.form, d(w));
}

TEST(CombDifferential, MatrixDualRoute) {
  // omega = E12 (x) dx1 + E21 (x) dx2: the combinatorial and classical
  // degree-1 differentials agree on (E11 - E22) (x) dx1^dx2.
  LieForm w(1, 2, 2, Side::H);
  w.add_coeff({1}, e12(2));
  w.add_coeff({2}, e21(2));
  ExtractResult res = comb_extract(comb_d(comb_lift(w)));
  ASSERT_TRUE(res.ok) << res.witness;
  EXPECT_EQ(res.form, d1(w));
  PolyMat h(2, 2, Poly::zero(2));
  h.at(0, 0) = cst(2, 1);
  h.at(1, 1) = cst(2, -1);
  LieForm want(2, 2, 2, Side::H);
  want.add_coeff({1, 2}, h);
  EXPECT_EQ(res.form, want);
}

TEST(CombDifferential, SeededOneFormsMatchClassical) {
  InnerCrossedModule cm(2);
  Rng rng(53);
  for (int t = 0; t < 4; ++t) {
    LieForm w = sample_lie_form(cm, rng, 1, 3, Side::H, 2);
    CombForm f = comb_lift(w);
    ExtractResult straight = comb_extract(comb_d(f));
    ASSERT_TRUE(straight.ok) << straight.witness;
    EXPECT_EQ(straight.form, d1(w));
    ExtractResult reversed = comb_extract(comb_d_tilde(f));
    ASSERT_TRUE(reversed.ok) << reversed.witness;
    EXPECT_EQ(reversed.form, d1_tilde(w));
  }
}

TEST(CombDifferential, SeededTwoFormsMatchClassical) {
  InnerCrossedModule cm(2);
  Rng rng(59);
  for (int t = 0; t < 3; ++t) {
    LieForm w = sample_lie_form(cm, rng, 2, 3, Side::H, 2);
    ExtractResult res = comb_extract(comb_d(comb_lift(w)));
    ASSERT_TRUE(res.ok) << res.witness;
    EXPECT_EQ(res.form, d(w));
  }
}

TEST(CombDifferential, TwistedMatchesClassical) {
  InnerCrossedModule cm(2);
  Rng rng(61);
  for (int t = 0; t < 3; ++t) {
    LieForm w = sample_lie_form(cm, rng, 1, 3, Side::H, 2);
    LieForm tw = sample_lie_form(cm, rng, 1, 3, Side::A, 2);
    CombForm f = comb_lift(w);
    CombForm a = comb_lift(tw);
    ExtractResult one = comb_extract(comb_d_twisted(cm, f, a));
    ASSERT_TRUE(one.ok) << one.witness;
    EXPECT_EQ(one.form, dn_m(cm, w, tw));

    LieForm t2 = sample_lie_form(cm, rng, 2, 3, Side::H, 2);
    CombForm g = comb_lift(t2);
    ExtractResult two = comb_extract(comb_d_twisted(cm, g, a));
    ASSERT_TRUE(two.ok) << two.witness;
    EXPECT_EQ(two.form, dn_m(cm, t2, tw));
  }
}

TEST(CombDifferential, TwistedHolonomyFactorCollapses) {
  // Transporting the closing factor omega(p2, p0) along the accumulated
  // twist equals the plain inverse of omega(p0, p2): the two published
  // expressions for the twisted degree-1 differential agree factor by
  // factor.
  InnerCrossedModule cm(2);
  Rng rng(67);
  for (int t = 0; t < 3; ++t) {
    LieForm w = sample_lie_form(cm, rng, 1, 3, Side::H, 2);
    LieForm tw = sample_lie_form(cm, rng, 1, 3, Side::A, 2);
    CombForm f = comb_lift(w);
    CombForm a = comb_lift(tw);
    for (std::vector<int> pts :
         {std::vector<int>{0, 1, 2}, std::vector<int>{1, 2, 3}}) {
      int slots = 3;
      WeilMat hol = a.eval(slots, {pts[0], pts[1]}) *
                    a.eval(slots, {pts[1], pts[2]});
      WeilMat lhs = cm.act_weil(hol, f.eval(slots, {pts[2], pts[0]}));
      WeilMat rhs = weil_mat_inverse(f.eval(slots, {pts[0], pts[2]}));
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(CombDifferential, CompositeVanishesInHigherDegree) {
  // For degree >= 2 the alternating face factors commute and d(d F) is the
  // constant identity, matching the classical d(d) = 0.
  InnerCrossedModule cm(2);
  for (int dim : {3, 4}) {
    Rng rng(70 + dim);
    LieForm w = sample_lie_form(cm, rng, 2, dim, Side::H, 1);
    CombForm dd = comb_d(comb_d(comb_lift(w)));
    EXPECT_TRUE(is_identity(dd.eval(4, {0, 1, 2, 3, 4})));
  }
}

TEST(CombDifferential, VacuousOutputExtractsToZero) {
  // d of a 2-form over a 2-dimensional ring: the 3-form output has no
  // coordinates to live on, so the value collapses to the identity and the
  // extraction is the zero form.
  InnerCrossedModule cm(2);
  Rng rng(73);
  LieForm w = sample_lie_form(cm, rng, 2, 2, Side::H, 2);
  ExtractResult res = comb_extract(comb_d(comb_lift(w)));
  ASSERT_TRUE(res.ok) << res.witness;
  EXPECT_TRUE(res.form.is_zero());
}

TEST(DegreeZero, CombinatorialRoutesMatchClassical) {
  InnerCrossedModule cm(2);
  Rng rng(79);
  for (int t = 0; t < 3; ++t) {
    GroupMap g = cm.sample_h(rng, 3, 2);
    LieForm m = sample_lie_form(cm, rng, 1, 3, Side::A, 2);
    CombForm a = comb_lift(m);

    ExtractResult plain = comb_extract(comb_d0(g));
    ASSERT_TRUE(plain.ok) << plain.witness;
    EXPECT_EQ(plain.form, d0(g));

    ExtractResult reversed = comb_extract(comb_d0_tilde(g));
    ASSERT_TRUE(reversed.ok) << reversed.witness;
    EXPECT_EQ(reversed.form, d0_tilde(g));

    ExtractResult twisted = comb_extract(comb_d0_twisted(cm, g, a));
    ASSERT_TRUE(twisted.ok) << twisted.witness;
    EXPECT_EQ(twisted.form, d0_m(cm, g, m));

    ExtractResult twisted_rev = comb_extract(comb_d0_tilde_twisted(cm, g, a));
    ASSERT_TRUE(twisted_rev.ok) << twisted_rev.witness;
    EXPECT_EQ(twisted_rev.form, d0_tilde_m(cm, g, m));
  }
}

TEST(CombBracket, GroupCommutatorOfFacesMatchesBracket) {
  // [omega, omega'](p0..p_{m+n}) = group commutator of the two face
  // evaluations; extraction agrees with the classical bracket.
  InnerCrossedModule cm(2);
  Rng rng(83);
  LieForm w1 = sample_lie_form(cm, rng, 1, 3, Side::H, 2);
  LieForm w2 = sample_lie_form(cm, rng, 1, 3, Side::H, 2);
  CombForm f1 = comb_lift(w1);
  CombForm f2 = comb_lift(w2);
  CombForm comm(2, 3, 2, Side::H,
                [f1, f2](int slots, const std::vector<int>& pts) {
                  WeilMat x = f1.eval(slots, {pts[0], pts[1]});
                  WeilMat y = f2.eval(slots, {pts[1], pts[2]});
                  return x * y * weil_mat_inverse(x) * weil_mat_inverse(y);
                });
  ExtractResult res = comb_extract(comm);
  ASSERT_TRUE(res.ok) << res.witness;
  EXPECT_EQ(res.form, bracket(w1, w2));

  LieForm t2 = sample_lie_form(cm, rng, 2, 3, Side::H, 2);
  CombForm g2 = comb_lift(t2);
  CombForm comm12(3, 3, 2, Side::H,
                  [f1, g2](int slots, const std::vector<int>& pts) {
                    WeilMat x = f1.eval(slots, {pts[0], pts[1]});
                    WeilMat y = g2.eval(slots, {pts[1], pts[2], pts[3]});
                    return x * y * weil_mat_inverse(x) * weil_mat_inverse(y);
                  });
  ExtractResult res12 = comb_extract(comm12);
  ASSERT_TRUE(res12.ok) << res12.witness;
  EXPECT_EQ(res12.form, bracket(w1, t2));
}

TEST(CombForm, RejectsMalformedInput) {
  LieForm w = scalar_form();
  CombForm f = comb_lift(w);
  EXPECT_THROW(f.eval(2, {0, 1, 2}), gf_error);  // wrong point count
  EXPECT_THROW(f.eval(1, {0, 2}), gf_error);     // point beyond the slots
  EXPECT_THROW(comb_lift(lie_form_zero(0, 2, 1, Side::H)), gf_error);

  InnerCrossedModule cm(2);
  Rng rng(89);
  LieForm t = sample_lie_form(cm, rng, 2, 3, Side::H, 2);
  EXPECT_THROW(comb_d_tilde(comb_lift(t)), gf_error);
  LieForm h1 = sample_lie_form(cm, rng, 1, 3, Side::H, 2);
  EXPECT_THROW(comb_d_twisted(cm, comb_lift(t), comb_lift(h1)), gf_error);
}

TEST(EquivSuite, AllRecordsPassAndDeterministic) {
  EquivParams p;
  p.seed = 2024;
  p.trials1 = 6;
  p.trials2 = 3;
  p.dim = 3;
  p.size = 2;
  p.maxdeg = 2;
  std::vector<Record> records = run_equiv_suite(p);
  ASSERT_FALSE(records.empty());
  for (const Record& r : records)
    EXPECT_TRUE(r.pass) << r.equation << ": " << r.witness;
  // The calibration record plus five seeded streams.
  EXPECT_EQ(records.size(), 6u);

  std::vector<Record> again = run_equiv_suite(p);
  ASSERT_EQ(records.size(), again.size());
  for (size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i].equation, again[i].equation);
    EXPECT_EQ(records[i].pass, again[i].pass);
  }
}

TEST(EquivSuite, CriterionParametersStayFast) {
  EquivParams p;
  p.seed = 7;
  std::vector<Record> records = run_equiv_suite(p);
  for (const Record& r : records)
    EXPECT_TRUE(r.pass) << r.equation << ": " << r.witness;
}
