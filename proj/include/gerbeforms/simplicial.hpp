// Combinatorial (infinitesimal-simplex) representation of group-valued
// differential forms. A combinatorial n-form is a function of n+1 point
// indices: index 0 is the symbolic base point of the coordinate ring, index
// p >= 1 is the first-order neighbor x + delta_p in a Weil algebra with at
// least p slots. Values are group-like matrices I + nilpotent over the Weil
// ring. Classical forms embed via `comb_lift` (truncated exponential), the
// differentials are literal products of face evaluations, and `comb_extract`
// reads the classical form back off the full-slot coefficients after
// verifying that every degeneracy (identification of two points) collapses
// the value to the identity.
#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "calculus.hpp"

namespace gerbeforms {

// p(x + delta_slot): exact because repeated same-slot generators vanish, so
// the Taylor series stops after first order. slot == 0 embeds p unchanged.
inline WeilElement weil_taylor_shift(const Poly& p, int slots, int slot) {
  WeilElement w = WeilElement::from_poly(slots, p);
  if (slot == 0) return w;
  for (int a = 1; a <= p.dim(); ++a)
    w += p.derivative(a) * WeilElement::generator(slots, p.dim(), slot, a);
  return w;
}

inline WeilMat weil_shift_matrix(const PolyMat& m, int slots, int slot) {
  return m.map(
      [&](const Poly& p) { return weil_taylor_shift(p, slots, slot); });
}

// delta_{p,a}, with the base point contributing zero.
inline WeilElement weil_delta(int slots, int dim, int p, int a) {
  if (p == 0) return WeilElement::zero(slots, dim);
  return WeilElement::generator(slots, dim, p, a);
}

class CombForm {
 public:
  using Evaluator = std::function<WeilMat(int, const std::vector<int>&)>;

  CombForm(int deg, int dim, int msize, Side side, Evaluator ev)
      : deg_(deg), dim_(dim), msize_(msize), side_(side), eval_(std::move(ev)) {
    if (deg_ < 1 || dim_ < 1 || msize_ < 1)
      throw gf_error("combinatorial form needs degree and sizes >= 1");
  }

  int deg() const { return deg_; }
  int dim() const { return dim_; }
  int msize() const { return msize_; }
  Side side() const { return side_; }

  // Evaluate at a tuple of point indices inside a Weil ring with `slots`
  // slots. Point indices may repeat and appear in any order.
  WeilMat eval(int slots, const std::vector<int>& pts) const {
    if ((int)pts.size() != deg_ + 1)
      throw gf_error("combinatorial form of degree " + std::to_string(deg_) +
                     " takes " + std::to_string(deg_ + 1) + " points");
    for (int p : pts)
      if (p < 0 || p > slots)
        throw gf_error("point index outside the available slots");
    return eval_(slots, pts);
  }

 private:
  int deg_;
  int dim_;
  int msize_;
  Side side_;
  Evaluator eval_;
};

// Embed a classical form as a combinatorial one: the value at points
// (p_0,...,p_n) is I plus, for every ascending coordinate tuple, the
// coefficient matrix Taylor-shifted to the location of p_0 and contracted
// with the product of slot differences (delta_{p_t} - delta_{p_0}). The
// nilpotency of the argument truncates the exponential exactly at this
// linear term.
inline CombForm comb_lift(const LieForm& w) {
  if (w.deg() < 1) throw gf_error("comb_lift needs a form of degree >= 1");
  const int n = w.deg(), dim = w.dim(), msize = w.msize();
  return CombForm(
      n, dim, msize, w.side(),
      [w, n, dim, msize](int slots, const std::vector<int>& pts) {
        WeilMat out = WeilMat::identity(msize, WeilElement::one(slots, dim));
        for (const auto& [t, m] : w.coeffs()) {
          WeilElement sc = WeilElement::one(slots, dim);
          for (int i = 0; i < n; ++i)
            sc = sc * (weil_delta(slots, dim, pts[i + 1], t[i]) -
                       weil_delta(slots, dim, pts[0], t[i]));
          if (sc.is_zero()) continue;
          WeilMat shifted = weil_shift_matrix(m, slots, pts[0]);
          out = out + shifted.map([&](const WeilElement& e) { return e * sc; });
        }
        return out;
      });
}

// Group sections shifted to a point. The inverse entry uses the stored
// exact inverse: shifting is a ring map, so it lands on the true inverse of
// the shifted matrix.
inline WeilMat comb_group_at(const GroupMap& g, int slots, int p) {
  return weil_shift_matrix(g.mat, slots, p);
}
inline WeilMat comb_group_inv_at(const GroupMap& g, int slots, int p) {
  return weil_shift_matrix(g.inv, slots, p);
}

namespace detail {

inline std::vector<int> drop_point(const std::vector<int>& pts, int i) {
  std::vector<int> out;
  out.reserve(pts.size() - 1);
  for (int k = 0; k < (int)pts.size(); ++k)
    if (k != i) out.push_back(pts[k]);
  return out;
}

}  // namespace detail

// Differential of a combinatorial n-form. Degree 1 is the three-point
// product F(p0,p1) F(p1,p2) F(p2,p0); degree >= 2 is the alternating face
// product, with odd faces inverted.
inline CombForm comb_d(const CombForm& f) {
  const int n = f.deg();
  return CombForm(
      n + 1, f.dim(), f.msize(), f.side(),
      [f, n](int slots, const std::vector<int>& pts) {
        if (n == 1)
          return f.eval(slots, {pts[0], pts[1]}) *
                 f.eval(slots, {pts[1], pts[2]}) *
                 f.eval(slots, {pts[2], pts[0]});
        WeilMat out =
            WeilMat::identity(f.msize(), WeilElement::one(slots, f.dim()));
        for (int i = 0; i <= n + 1; ++i) {
          WeilMat face = f.eval(slots, detail::drop_point(pts, i));
          out = out * (i % 2 == 0 ? face : weil_mat_inverse(face));
        }
        return out;
      });
}

// Companion differential in degree 1: the same three factors multiplied in
// the reverse order.
inline CombForm comb_d_tilde(const CombForm& f) {
  if (f.deg() != 1)
    throw gf_error("the companion differential applies to 1-forms");
  return CombForm(2, f.dim(), f.msize(), f.side(),
                  [f](int slots, const std::vector<int>& pts) {
                    return f.eval(slots, {pts[2], pts[0]}) *
                           f.eval(slots, {pts[1], pts[2]}) *
                           f.eval(slots, {pts[0], pts[1]});
                  });
}

// Twisted differential: the twist is a degree-1 combinatorial form over the
// automorphism side, and faces that lose the leading point are transported
// back along it before being multiplied. In degree 1 every factor after the
// first is acted on by the twist holonomy accumulated along 0 -> 1 -> 2; in
// higher degree only the face dropping the leading point needs transport.
// The crossed module is captured by reference and must outlive the result.
inline CombForm comb_d_twisted(const CrossedModule& cm, const CombForm& f,
                               const CombForm& tw) {
  if (f.side() != Side::H)
    throw gf_error("twisted differential applies to H-side forms");
  if (tw.deg() != 1 || tw.side() != Side::A || tw.msize() != cm.a_size() ||
      tw.dim() != f.dim())
    throw gf_error("twist must be a degree-1 form over the acting side");
  const int n = f.deg();
  return CombForm(
      n + 1, f.dim(), f.msize(), f.side(),
      [&cm, f, tw, n](int slots, const std::vector<int>& pts) {
        WeilMat a01 = tw.eval(slots, {pts[0], pts[1]});
        if (n == 1) {
          WeilMat a12 = tw.eval(slots, {pts[1], pts[2]});
          return f.eval(slots, {pts[0], pts[1]}) *
                 cm.act_weil(a01, f.eval(slots, {pts[1], pts[2]})) *
                 cm.act_weil(a01 * a12, f.eval(slots, {pts[2], pts[0]}));
        }
        WeilMat out =
            cm.act_weil(a01, f.eval(slots, detail::drop_point(pts, 0)));
        for (int i = 1; i <= n + 1; ++i) {
          WeilMat face = f.eval(slots, detail::drop_point(pts, i));
          out = out * (i % 2 == 0 ? face : weil_mat_inverse(face));
        }
        return out;
      });
}

// Degree-0 differentials, packaged as combinatorial 1-forms built from a
// group section: g(p)^{-1} g(q), its reversed companion g(q) g(p)^{-1}, and
// the twisted versions transporting the far evaluation back along the twist.
inline CombForm comb_d0(const GroupMap& g) {
  return CombForm(1, g.dim(), g.size(), g.side,
                  [g](int slots, const std::vector<int>& pts) {
                    return comb_group_inv_at(g, slots, pts[0]) *
                           comb_group_at(g, slots, pts[1]);
                  });
}

inline CombForm comb_d0_tilde(const GroupMap& g) {
  return CombForm(1, g.dim(), g.size(), g.side,
                  [g](int slots, const std::vector<int>& pts) {
                    return comb_group_at(g, slots, pts[1]) *
                           comb_group_inv_at(g, slots, pts[0]);
                  });
}

inline CombForm comb_d0_twisted(const CrossedModule& cm, const GroupMap& g,
                                const CombForm& tw) {
  if (g.side != Side::H || tw.deg() != 1 || tw.side() != Side::A)
    throw gf_error("twisted degree-0 differential needs an H section and an "
                   "A-side twist");
  return CombForm(1, g.dim(), g.size(), g.side,
                  [&cm, g, tw](int slots, const std::vector<int>& pts) {
                    WeilMat a = tw.eval(slots, {pts[0], pts[1]});
                    return comb_group_inv_at(g, slots, pts[0]) *
                           cm.act_weil(a, comb_group_at(g, slots, pts[1]));
                  });
}

inline CombForm comb_d0_tilde_twisted(const CrossedModule& cm,
                                      const GroupMap& g, const CombForm& tw) {
  if (g.side != Side::H || tw.deg() != 1 || tw.side() != Side::A)
    throw gf_error("twisted degree-0 differential needs an H section and an "
                   "A-side twist");
  return CombForm(1, g.dim(), g.size(), g.side,
                  [&cm, g, tw](int slots, const std::vector<int>& pts) {
                    WeilMat a = tw.eval(slots, {pts[0], pts[1]});
                    return cm.act_weil(a, comb_group_at(g, slots, pts[1])) *
                           comb_group_inv_at(g, slots, pts[0]);
                  });
}

struct ExtractResult {
  bool ok = false;
  std::string witness;  // first degeneracy violation, when !ok
  LieForm form;
};

namespace detail {

inline std::string weil_first_term(const WeilElement& w) {
  std::string s = w.to_string();
  // Summands are joined by " + (" (polynomial factors never contain a
  // parenthesis), so cutting there keeps exactly the leading summand.
  auto cut = s.find(" + (");
  return cut == std::string::npos ? s : s.substr(0, cut);
}

// First nonzero entry of (m - I), rendered for a witness; empty if m == I.
inline std::string identity_deviation(const WeilMat& m) {
  WeilMat id = WeilMat::identity(m.rows(), WeilElement::one(
                                               m.at(0, 0).slots(),
                                               m.at(0, 0).dim()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      WeilElement dev = m.at(i, j) - id.at(i, j);
      if (!dev.is_zero())
        return "entry(" + std::to_string(i) + "," + std::to_string(j) +
               "): " + weil_first_term(dev);
    }
  return "";
}

}  // namespace detail

// Read a classical form back from a combinatorial one. The value at the
// canonical points (0, 1, ..., n) is first checked against every
// identification of two points (sending a slot to another slot, or to the
// base): each must collapse the matrix to the identity. Those checks force
// every monomial that misses a slot to vanish, so the remaining content sits
// on full-slot monomials and the coefficient of
// delta_{1,a1} ... delta_{n,an} is the classical component on (a1<...<an).
inline ExtractResult comb_extract(const CombForm& f) {
  const int n = f.deg(), dim = f.dim();
  ExtractResult res;
  res.form = lie_form_zero(n, dim, f.msize(), f.side());
  std::vector<int> pts(n + 1);
  for (int i = 0; i <= n; ++i) pts[i] = i;
  WeilMat w = f.eval(n, pts);
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      if (j == i) continue;
      WeilMat collapsed =
          w.map([&](const WeilElement& e) { return weil_degenerate(e, i, j); });
      std::string dev = detail::identity_deviation(collapsed);
      if (!dev.empty()) {
        res.witness = "identifying point " + std::to_string(i) + " with " +
                      (j == 0 ? std::string("the base") : std::to_string(j)) +
                      " leaves " + dev;
        return res;
      }
    }
  res.ok = true;
  const std::uint32_t full = (n >= 32) ? 0 : ((1u << n) - 1u);
  for (const IndexTuple& t : ascending_tuples(dim, n)) {
    std::uint32_t coords = 0;
    for (int a : t) coords |= 1u << (a - 1);
    PolyMat m(f.msize(), f.msize(), Poly::zero(dim));
    bool nonzero = false;
    for (int r = 0; r < f.msize(); ++r)
      for (int c = 0; c < f.msize(); ++c) {
        Poly p = w.at(r, c).coefficient(full, coords);
        if (!p.is_zero()) nonzero = true;
        m.at(r, c) = p;
      }
    if (nonzero) res.form.add_coeff(t, m);
  }
  return res;
}

}  // namespace gerbeforms
