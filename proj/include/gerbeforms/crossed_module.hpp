#pragma once

// Crossed modules of polynomial matrix groups: a group H mapped to a group A
// acting on H, with the boundary map equivariant for conjugation and the
// Peiffer rule turning the boundary image into inner automorphisms. Group
// elements are polynomial matrices that carry their exact inverse with them
// (inverses are stored and transported through products, never recomputed by
// elimination), so every computation stays in the polynomial ring.
//
// Two instances ship with the library:
//   inner   — H = A = invertible k x k polynomial matrices, the boundary is
//             the identity and the action is conjugation;
//   abelian — H = {I + p*E12} inside 2 x 2 upper unipotent matrices, A is the
//             trivial 1 x 1 group, all actions trivial.
// Further instances can be supplied by deriving from CrossedModule.

#include <gerbeforms/matrix.hpp>
#include <gerbeforms/sampling.hpp>

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace gerbeforms {

enum class Side { H, A };

inline const char* side_name(Side s) { return s == Side::H ? "H" : "A"; }

// A polynomial map into a matrix group, with its exact inverse stored.
struct GroupMap {
  Side side = Side::H;
  PolyMat mat;
  PolyMat inv;

  int size() const { return mat.rows(); }
  int dim() const { return mat.at(0, 0).dim(); }

  bool is_identity() const {
    return mat == PolyMat::identity(mat.rows(), mat.at(0, 0)) &&
           inv == PolyMat::identity(mat.rows(), mat.at(0, 0));
  }
};

inline GroupMap group_identity(Side side, int size, int dim) {
  PolyMat id = PolyMat::identity(size, Poly::zero(dim));
  return GroupMap{side, id, id};
}

inline GroupMap group_mul(const GroupMap& a, const GroupMap& b) {
  if (a.side != b.side) throw gf_error("group product across sides");
  return GroupMap{a.side, a.mat * b.mat, b.inv * a.inv};
}

inline GroupMap group_inverse(const GroupMap& g) {
  return GroupMap{g.side, g.inv, g.mat};
}

// I + p * E_{rc} (1-based indices, r != c), with exact inverse I - p * E_{rc}.
inline GroupMap group_shear(Side side, int size, int dim, int r, int c,
                            const Poly& p) {
  if (r == c) throw gf_error("shear on the diagonal");
  if (r < 1 || r > size || c < 1 || c > size)
    throw gf_error("shear index out of range");
  GroupMap g = group_identity(side, size, dim);
  g.mat.at(r - 1, c - 1) = p;
  g.inv.at(r - 1, c - 1) = -p;
  return g;
}

inline bool group_is_valid(const GroupMap& g) {
  if (g.mat.rows() != g.mat.cols() || g.inv.rows() != g.inv.cols() ||
      g.mat.rows() != g.inv.rows())
    return false;
  PolyMat id = PolyMat::identity(g.mat.rows(), g.mat.at(0, 0));
  return g.mat * g.inv == id && g.inv * g.mat == id;
}

inline Mat<Rat> group_eval(const GroupMap& g, const std::vector<Rat>& point) {
  return g.mat.map([&](const Poly& p) { return p.eval(point); });
}

// Conjugation of a Lie-algebra-valued matrix by a group element on its own
// side: g y g^{-1}.
inline PolyMat conj_lie(const GroupMap& g, const PolyMat& y) {
  return g.mat * y * g.inv;
}

class CrossedModule {
 public:
  virtual ~CrossedModule() = default;

  virtual std::string tag() const = 0;
  virtual int h_size() const = 0;  // matrix size of H elements
  virtual int a_size() const = 0;  // matrix size of A elements

  // Group action of A on H and its three linearizations.
  virtual GroupMap act_group(const GroupMap& a, const GroupMap& h) const = 0;
  virtual PolyMat act_lie(const GroupMap& a, const PolyMat& y) const = 0;
  virtual PolyMat lie_act_lie(const PolyMat& u, const PolyMat& y) const = 0;
  virtual PolyMat lie_act_group(const PolyMat& u, const GroupMap& g) const = 0;

  // Boundary H -> A and its linearization.
  virtual GroupMap boundary_group(const GroupMap& h) const = 0;
  virtual PolyMat boundary_lie(const PolyMat& y) const = 0;

  // Action of a lifted A-valued matrix on a lifted H-valued matrix over the
  // infinitesimal algebra (used by the combinatorial differentials).
  virtual WeilMat act_weil(const WeilMat& a, const WeilMat& h) const = 0;

  // Seeded sampling of elements, used by identity suites and generators.
  virtual GroupMap sample_h(Rng& rng, int dim, int maxdeg) const = 0;
  virtual GroupMap sample_a(Rng& rng, int dim, int maxdeg) const = 0;
  virtual PolyMat sample_lie_h(Rng& rng, int dim, int maxdeg) const = 0;
  virtual PolyMat sample_lie_a(Rng& rng, int dim, int maxdeg) const = 0;

 protected:
  void check_side(const GroupMap& g, Side s) const {
    if (g.side != s) throw gf_error("group element on the wrong side");
  }
};

// H = A = invertible k x k polynomial matrices, boundary the identity, action
// by conjugation. Sampled elements are products of shears (hence unipotent
// with exact polynomial inverses).
class InnerCrossedModule : public CrossedModule {
 public:
  explicit InnerCrossedModule(int k) : k_(k) {
    if (k < 2) throw gf_error("inner instance needs matrix size >= 2");
  }

  std::string tag() const override { return "inner"; }
  int h_size() const override { return k_; }
  int a_size() const override { return k_; }

  GroupMap act_group(const GroupMap& a, const GroupMap& h) const override {
    check_side(a, Side::A);
    check_side(h, Side::H);
    return GroupMap{Side::H, a.mat * h.mat * a.inv, a.mat * h.inv * a.inv};
  }

  PolyMat act_lie(const GroupMap& a, const PolyMat& y) const override {
    check_side(a, Side::A);
    return a.mat * y * a.inv;
  }

  PolyMat lie_act_lie(const PolyMat& u, const PolyMat& y) const override {
    return u * y - y * u;
  }

  PolyMat lie_act_group(const PolyMat& u, const GroupMap& g) const override {
    check_side(g, Side::H);
    return (u * g.mat - g.mat * u) * g.inv;
  }

  GroupMap boundary_group(const GroupMap& h) const override {
    check_side(h, Side::H);
    return GroupMap{Side::A, h.mat, h.inv};
  }

  PolyMat boundary_lie(const PolyMat& y) const override { return y; }

  WeilMat act_weil(const WeilMat& a, const WeilMat& h) const override {
    return a * h * weil_mat_inverse(a);
  }

  GroupMap sample_h(Rng& rng, int dim, int maxdeg) const override {
    return sample_unipotent(Side::H, rng, dim, maxdeg);
  }
  GroupMap sample_a(Rng& rng, int dim, int maxdeg) const override {
    return sample_unipotent(Side::A, rng, dim, maxdeg);
  }
  PolyMat sample_lie_h(Rng& rng, int dim, int maxdeg) const override {
    return sample_poly_matrix(rng, k_, dim, maxdeg);
  }
  PolyMat sample_lie_a(Rng& rng, int dim, int maxdeg) const override {
    return sample_poly_matrix(rng, k_, dim, maxdeg);
  }

 private:
  GroupMap sample_unipotent(Side side, Rng& rng, int dim, int maxdeg) const {
    GroupMap g = group_identity(side, k_, dim);
    int factors = static_cast<int>(rng.range(2, 3));
    for (int t = 0; t < factors; ++t) {
      int r = static_cast<int>(rng.range(1, k_));
      int c = static_cast<int>(rng.range(1, k_ - 1));
      if (c >= r) ++c;  // distinct column
      g = group_mul(g, group_shear(side, k_, dim, r, c,
                                   sample_monomial(rng, dim, maxdeg)));
    }
    return g;
  }

  int k_;
};

// H = {I + p*E12} in 2 x 2 matrices (abelian), A trivial. The boundary and
// all actions are trivial; Lie(A) = 0.
class AbelianCrossedModule : public CrossedModule {
 public:
  std::string tag() const override { return "abelian"; }
  int h_size() const override { return 2; }
  int a_size() const override { return 1; }

  GroupMap act_group(const GroupMap& a, const GroupMap& h) const override {
    check_side(a, Side::A);
    check_side(h, Side::H);
    check_h(h.mat);
    return h;
  }

  PolyMat act_lie(const GroupMap& a, const PolyMat& y) const override {
    check_side(a, Side::A);
    check_lie_h(y);
    return y;
  }

  PolyMat lie_act_lie(const PolyMat& u, const PolyMat& y) const override {
    check_lie_a(u);
    check_lie_h(y);
    return PolyMat(2, 2, Poly::zero(y.at(0, 0).dim()));
  }

  PolyMat lie_act_group(const PolyMat& u, const GroupMap& g) const override {
    check_lie_a(u);
    check_h(g.mat);
    return PolyMat(2, 2, Poly::zero(g.dim()));
  }

  GroupMap boundary_group(const GroupMap& h) const override {
    check_side(h, Side::H);
    check_h(h.mat);
    return group_identity(Side::A, 1, h.dim());
  }

  PolyMat boundary_lie(const PolyMat& y) const override {
    check_lie_h(y);
    return PolyMat(1, 1, Poly::zero(y.at(0, 0).dim()));
  }

  WeilMat act_weil(const WeilMat&, const WeilMat& h) const override { return h; }

  GroupMap sample_h(Rng& rng, int dim, int maxdeg) const override {
    return group_shear(Side::H, 2, dim, 1, 2, sample_poly_nonzero(rng, dim, maxdeg));
  }
  GroupMap sample_a(Rng& rng, int dim, int) const override {
    (void)rng;
    return group_identity(Side::A, 1, dim);
  }
  PolyMat sample_lie_h(Rng& rng, int dim, int maxdeg) const override {
    PolyMat y(2, 2, Poly::zero(dim));
    y.at(0, 1) = sample_poly_nonzero(rng, dim, maxdeg);
    return y;
  }
  PolyMat sample_lie_a(Rng& rng, int dim, int) const override {
    (void)rng;
    return PolyMat(1, 1, Poly::zero(dim));
  }

 private:
  void check_h(const PolyMat& m) const {
    int dim = m.at(0, 0).dim();
    Poly one = Poly::constant(dim, Rat(1));
    if (m.rows() != 2 || m.cols() != 2 || m.at(0, 0) != one || m.at(1, 1) != one ||
        !m.at(1, 0).is_zero())
      throw gf_error("abelian instance: H element must be I + p*E12");
  }
  void check_lie_h(const PolyMat& y) const {
    if (y.rows() != 2 || y.cols() != 2 || !y.at(0, 0).is_zero() ||
        !y.at(1, 0).is_zero() || !y.at(1, 1).is_zero())
      throw gf_error("abelian instance: Lie(H) element must be p*E12");
  }
  void check_lie_a(const PolyMat& u) const {
    if (u.rows() != 1 || u.cols() != 1 || !u.at(0, 0).is_zero())
      throw gf_error("abelian instance: Lie(A) is zero");
  }
};

inline std::shared_ptr<const CrossedModule> make_crossed_module(
    const std::string& tag, int size) {
  if (tag == "inner") return std::make_shared<InnerCrossedModule>(size);
  if (tag == "abelian") {
    if (size != 2) throw gf_error("abelian instance has fixed size 2");
    return std::make_shared<AbelianCrossedModule>();
  }
  throw gf_error("unknown crossed-module instance: " + tag);
}

// Seeded structural check of the crossed-module axioms on sampled elements.
// Returns (axiom name, holds) pairs; all should hold for shipped instances.
inline std::vector<std::pair<std::string, bool>> check_crossed_axioms(
    const CrossedModule& cm, std::uint64_t seed, int dim, int maxdeg,
    int trials) {
  std::vector<std::pair<std::string, bool>> out;
  auto record = [&](const std::string& name, bool ok) {
    for (auto& [n, v] : out)
      if (n == name) {
        v = v && ok;
        return;
      }
    out.emplace_back(name, ok);
  };
  Rng root(seed);
  for (int t = 0; t < trials; ++t) {
    Rng rng = root.child(t);
    GroupMap a = cm.sample_a(rng, dim, maxdeg);
    GroupMap h = cm.sample_h(rng, dim, maxdeg);
    GroupMap h2 = cm.sample_h(rng, dim, maxdeg);
    PolyMat u = cm.sample_lie_a(rng, dim, maxdeg);
    PolyMat y = cm.sample_lie_h(rng, dim, maxdeg);
    PolyMat y2 = cm.sample_lie_h(rng, dim, maxdeg);

    record("inverses-exact", group_is_valid(a) && group_is_valid(h));
    record("action-multiplicative",
           cm.act_group(a, group_mul(h, h2)).mat ==
               group_mul(cm.act_group(a, h), cm.act_group(a, h2)).mat);
    record("action-inverse",
           cm.act_group(a, group_inverse(h)).mat ==
               group_inverse(cm.act_group(a, h)).mat);
    {
      GroupMap lhs = cm.boundary_group(cm.act_group(a, h));
      GroupMap bh = cm.boundary_group(h);
      record("boundary-equivariant", lhs.mat == (a.mat * bh.mat) * a.inv);
    }
    record("peiffer", cm.act_group(cm.boundary_group(h), h2).mat ==
                          (h.mat * h2.mat) * h.inv);
    record("lie-boundary-equivariant",
           cm.boundary_lie(cm.lie_act_lie(u, y)) ==
               commutator(u, cm.boundary_lie(y)));
    record("lie-peiffer",
           cm.lie_act_lie(cm.boundary_lie(y), y2) == commutator(y, y2));
    record("lie-action-derivation",
           cm.lie_act_lie(u, commutator(y, y2)) ==
               commutator(cm.lie_act_lie(u, y), y2) +
                   commutator(y, cm.lie_act_lie(u, y2)));
    record("action-bracket-compatible",
           cm.act_lie(a, commutator(y, y2)) ==
               commutator(cm.act_lie(a, y), cm.act_lie(a, y2)));
    // Crossed homomorphism law for the degree-0 pairing:
    // [u, g g'] = [u, g] + g [u, g'] g^{-1}.
    record("crossed-homomorphism",
           cm.lie_act_group(u, group_mul(h, h2)) ==
               cm.lie_act_group(u, h) + conj_lie(h, cm.lie_act_group(u, h2)));
    // Linearized Peiffer rule: pairing the boundary of y against a group
    // element g acts by the difference of y and its conjugate.
    record("pairing-peiffer",
           cm.lie_act_group(cm.boundary_lie(y), h) == y - conj_lie(h, y));
  }
  return out;
}

}  // namespace gerbeforms
