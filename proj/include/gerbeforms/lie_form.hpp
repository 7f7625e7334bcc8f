#pragma once

// Lie-algebra-valued differential forms with exact polynomial coefficients.
// A form of degree n in d variables stores, per strictly increasing index
// tuple (a1 < ... < an), a square polynomial matrix — the coefficient of
// dx_{a1} ^ ... ^ dx_{an}. Forms are tagged with the side of the crossed
// module their values live on (H or A), which gates which pairings apply.

#include <gerbeforms/crossed_module.hpp>
#include <gerbeforms/matrix.hpp>

#include <algorithm>
#include <iterator>
#include <map>
#include <string>
#include <vector>

namespace gerbeforms {

using IndexTuple = std::vector<int>;

// All strictly increasing k-tuples from {1..d}, lexicographic.
inline std::vector<IndexTuple> ascending_tuples(int d, int k) {
  std::vector<IndexTuple> out;
  if (k < 0 || k > d) return out;
  IndexTuple cur(k);
  auto rec = [&](auto&& self, int pos, int lo) -> void {
    if (pos == k) {
      out.push_back(cur);
      return;
    }
    for (int v = lo; v <= d; ++v) {
      cur[pos] = v;
      self(self, pos + 1, v + 1);
    }
  };
  rec(rec, 0, 1);
  return out;
}

// Shuffle sign of two disjoint strictly increasing tuples: parity of pairs
// (x in a, y in b) with x > y. Returns 0 if the tuples intersect.
inline int tuple_shuffle_sign(const IndexTuple& a, const IndexTuple& b) {
  int inversions = 0;
  for (int x : a)
    for (int y : b) {
      if (x == y) return 0;
      if (x > y) ++inversions;
    }
  return (inversions & 1) ? -1 : 1;
}

inline IndexTuple tuple_merge(const IndexTuple& a, const IndexTuple& b) {
  IndexTuple out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

class LieForm {
 public:
  LieForm() : deg_(0), dim_(0), msize_(0), side_(Side::H) {}

  LieForm(int deg, int dim, int msize, Side side)
      : deg_(deg), dim_(dim), msize_(msize), side_(side) {
    if (deg < 1) throw gf_error("form degree must be >= 1");
    if (dim < 1) throw gf_error("form dimension must be >= 1");
    if (msize < 1) throw gf_error("form coefficient size must be >= 1");
  }

  int deg() const { return deg_; }
  int dim() const { return dim_; }
  int msize() const { return msize_; }
  Side side() const { return side_; }
  const std::map<IndexTuple, PolyMat>& coeffs() const { return coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }

  // Degree exceeding the dimension leaves no increasing tuples: identically 0.
  bool vacuous() const { return deg_ > dim_; }

  void add_coeff(const IndexTuple& tuple, const PolyMat& m) {
    validate_tuple(tuple);
    if (m.rows() != msize_ || m.cols() != msize_)
      throw gf_error("form coefficient has the wrong matrix size");
    if (m.is_zero()) return;
    auto [it, inserted] = coeffs_.emplace(tuple, m);
    if (!inserted) {
      it->second += m;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  PolyMat coeff(const IndexTuple& tuple) const {
    validate_tuple(tuple);
    auto it = coeffs_.find(tuple);
    return it == coeffs_.end() ? PolyMat(msize_, msize_, Poly::zero(dim_))
                               : it->second;
  }

  friend LieForm operator+(const LieForm& a, const LieForm& b) {
    check_compatible(a, b);
    LieForm r = a;
    for (const auto& [t, m] : b.coeffs_) r.add_coeff(t, m);
    return r;
  }

  friend LieForm operator-(const LieForm& a, const LieForm& b) {
    check_compatible(a, b);
    LieForm r = a;
    for (const auto& [t, m] : b.coeffs_) r.add_coeff(t, -m);
    return r;
  }

  friend LieForm operator-(const LieForm& a) {
    LieForm r(a.deg_, a.dim_, a.msize_, a.side_);
    for (const auto& [t, m] : a.coeffs_) r.coeffs_.emplace(t, -m);
    return r;
  }

  friend LieForm operator*(const Rat& c, const LieForm& a) {
    LieForm r(a.deg_, a.dim_, a.msize_, a.side_);
    if (rat_is_zero(c)) return r;
    for (const auto& [t, m] : a.coeffs_) r.coeffs_.emplace(t, c * m);
    return r;
  }

  LieForm& operator+=(const LieForm& b) { return *this = *this + b; }
  LieForm& operator-=(const LieForm& b) { return *this = *this - b; }

  friend bool operator==(const LieForm& a, const LieForm& b) {
    return a.deg_ == b.deg_ && a.dim_ == b.dim_ && a.msize_ == b.msize_ &&
           a.side_ == b.side_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const LieForm& a, const LieForm& b) { return !(a == b); }

  LieForm with_side(Side s) const {
    LieForm r = *this;
    r.side_ = s;
    return r;
  }

  // First nonzero coefficient in canonical order, as human-readable text —
  // used to report a witness monomial when a residual fails to vanish.
  std::string leading_term() const {
    if (coeffs_.empty()) return "0";
    const auto& [t, m] = *coeffs_.begin();
    std::string tuple = "(";
    for (size_t i = 0; i < t.size(); ++i)
      tuple += (i ? "," : "") + std::to_string(t[i]);
    tuple += ")";
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c)
        if (!m.at(r, c).is_zero())
          return tuple + "[" + std::to_string(r + 1) + "," +
                 std::to_string(c + 1) + "]: " + m.at(r, c).leading_term();
    return tuple;  // unreachable: stored coefficients are nonzero
  }

 private:
  void validate_tuple(const IndexTuple& tuple) const {
    if (static_cast<int>(tuple.size()) != deg_)
      throw gf_error("index tuple arity does not match form degree");
    int prev = 0;
    for (int v : tuple) {
      if (v <= prev || v > dim_)
        throw gf_error("index tuple must be strictly increasing within range");
      prev = v;
    }
  }

  static void check_compatible(const LieForm& a, const LieForm& b) {
    if (a.deg_ != b.deg_ || a.dim_ != b.dim_ || a.msize_ != b.msize_ ||
        a.side_ != b.side_)
      throw gf_error("form shape or side mismatch");
  }

  int deg_, dim_, msize_;
  Side side_;
  std::map<IndexTuple, PolyMat> coeffs_;
};

inline LieForm lie_form_zero(int deg, int dim, int msize, Side side) {
  return LieForm(deg, dim, msize, side);
}

// Generic wedge pairing: combine coefficients of a and b over merged index
// tuples with the shuffle sign, mapping matrix pairs through f.
template <typename F>
LieForm wedge_bilinear(const LieForm& a, const LieForm& b, Side out_side,
                       int out_msize, F f) {
  if (a.dim() != b.dim()) throw gf_error("wedge of forms over different rings");
  LieForm out(a.deg() + b.deg(), a.dim(), out_msize, out_side);
  for (const auto& [ta, ma] : a.coeffs())
    for (const auto& [tb, mb] : b.coeffs()) {
      int sign = tuple_shuffle_sign(ta, tb);
      if (sign == 0) continue;
      PolyMat val = f(ma, mb);
      out.add_coeff(tuple_merge(ta, tb), sign > 0 ? val : PolyMat(-val));
    }
  return out;
}

// Seeded random form with coefficients sampled from the instance.
inline LieForm sample_lie_form(const CrossedModule& cm, Rng& rng, int deg,
                               int dim, Side side, int maxdeg) {
  int msize = side == Side::H ? cm.h_size() : cm.a_size();
  LieForm w(deg, dim, msize, side);
  for (const IndexTuple& t : ascending_tuples(dim, deg)) {
    if (!rng.chance(4, 5)) continue;
    PolyMat m = side == Side::H ? cm.sample_lie_h(rng, dim, maxdeg)
                                : cm.sample_lie_a(rng, dim, maxdeg);
    w.add_coeff(t, m);
  }
  return w;
}

inline std::string leading_term(const PolyMat& m) {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (!m.at(r, c).is_zero())
        return "[" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
               "]: " + m.at(r, c).leading_term();
  return "0";
}

}  // namespace gerbeforms
