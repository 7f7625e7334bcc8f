// Crossed-module instances: stored-inverse group arithmetic, the conjugation
// (inner) and unipotent-abelian instances, and the seeded axiom checker.

#include <gerbeforms/crossed_module.hpp>

#include <gtest/gtest.h>

using namespace gerbeforms;

namespace {

Poly var(int dim, int i) { return Poly::variable(dim, i); }

}  // namespace

TEST(GroupMap, ShearProductsCarryExactInverses) {
  Rng rng(5);
  int dim = 3, k = 3;
  GroupMap g = group_identity(Side::H, k, dim);
  for (int t = 0; t < 6; ++t) {
    int r = static_cast<int>(rng.range(1, k));
    int c = static_cast<int>(rng.range(1, k - 1));
    if (c >= r) ++c;
    g = group_mul(g, group_shear(Side::H, k, dim, r, c,
                                 sample_poly_nonzero(rng, dim, 2)));
    EXPECT_TRUE(group_is_valid(g));
  }
  GroupMap gi = group_inverse(g);
  EXPECT_TRUE(group_mul(g, gi).is_identity());
  EXPECT_TRUE(group_mul(gi, g).is_identity());
}

TEST(GroupMap, EvalAtRationalPoint) {
  int dim = 2;
  GroupMap g = group_shear(Side::H, 2, dim, 1, 2, var(dim, 2));
  Mat<Rat> m = group_eval(g, {Rat(5), rat_from_long(1, 2)});
  EXPECT_EQ(m.at(0, 0), Rat(1));
  EXPECT_EQ(m.at(0, 1), rat_from_long(1, 2));
  EXPECT_EQ(m.at(1, 1), Rat(1));
}

TEST(GroupMap, RejectsMixedSideProducts) {
  GroupMap h = group_identity(Side::H, 2, 2);
  GroupMap a = group_identity(Side::A, 2, 2);
  EXPECT_THROW(group_mul(h, a), gf_error);
}

TEST(Inner, PairingAgainstGroupElement) {
  // For u = diag(1,-1) and g = I + x2*E12:
  // (u g - g u) g^{-1} = 2*x2*E12.
  int dim = 2;
  InnerCrossedModule cm(2);
  PolyMat u(2, 2, Poly::zero(dim));
  u.at(0, 0) = Poly::constant(dim, Rat(1));
  u.at(1, 1) = Poly::constant(dim, Rat(-1));
  GroupMap g = group_shear(Side::H, 2, dim, 1, 2, var(dim, 2));
  PolyMat out = cm.lie_act_group(u, g);
  PolyMat expect(2, 2, Poly::zero(dim));
  expect.at(0, 1) = Poly::constant(dim, Rat(2)) * var(dim, 2);
  EXPECT_EQ(out, expect);
}

TEST(Inner, BoundaryIsIdentity) {
  InnerCrossedModule cm(2);
  Rng rng(3);
  GroupMap h = cm.sample_h(rng, 2, 1);
  EXPECT_EQ(cm.boundary_group(h).mat, h.mat);
  EXPECT_EQ(cm.boundary_group(h).side, Side::A);
  PolyMat y = cm.sample_lie_h(rng, 2, 1);
  EXPECT_EQ(cm.boundary_lie(y), y);
}

TEST(Abelian, ShapeConstraintsEnforced) {
  AbelianCrossedModule cm;
  int dim = 2;
  PolyMat bad(2, 2, Poly::zero(dim));
  bad.at(1, 0) = var(dim, 1);
  EXPECT_THROW(cm.boundary_lie(bad), gf_error);

  GroupMap lower = group_shear(Side::H, 2, dim, 2, 1, var(dim, 1));
  EXPECT_THROW(cm.boundary_group(lower), gf_error);

  GroupMap ok = group_shear(Side::H, 2, dim, 1, 2, var(dim, 1));
  EXPECT_TRUE(cm.boundary_group(ok).is_identity());
  EXPECT_EQ(cm.boundary_group(ok).size(), 1);
}

TEST(Axioms, InnerSize2) {
  InnerCrossedModule cm(2);
  for (auto& [name, ok] : check_crossed_axioms(cm, 101, 2, 2, 8))
    EXPECT_TRUE(ok) << name;
}

TEST(Axioms, InnerSize3) {
  InnerCrossedModule cm(3);
  for (auto& [name, ok] : check_crossed_axioms(cm, 102, 3, 2, 5))
    EXPECT_TRUE(ok) << name;
}

TEST(Axioms, Abelian) {
  AbelianCrossedModule cm;
  for (auto& [name, ok] : check_crossed_axioms(cm, 103, 2, 2, 8))
    EXPECT_TRUE(ok) << name;
}

TEST(Factory, MakesInstancesByTag) {
  auto inner = make_crossed_module("inner", 3);
  EXPECT_EQ(inner->h_size(), 3);
  auto ab = make_crossed_module("abelian", 2);
  EXPECT_EQ(ab->a_size(), 1);
  EXPECT_THROW(make_crossed_module("abelian", 3), gf_error);
  EXPECT_THROW(make_crossed_module("other", 2), gf_error);
}
