#pragma once

// The algebra of polynomial functions on an n-fold infinitesimal neighborhood
// in d variables: generated over Rat[x1..xd] by nilpotents d(i,a) (slot i in
// 1..n, coordinate a in 1..d) subject to
//
//   d(i,a)*d(i,b) = 0                       (same slot annihilates), and
//   d(i,a)*d(j,b) = -d(i,b)*d(j,a), i != j  (coordinate antisymmetry).
//
// Equivalently the degree-k component is Lambda^k(slots) (x) Lambda^k(coords)
// with d(i,a) = e_i (x) f_a; the algebra is associative and commutative, and
// its degree-k component has dimension C(n,k)*C(d,k).
//
// Canonical monomial key: (sorted slot set, sorted coordinate set), stored as
// bitmasks, with any reordering sign absorbed into the polynomial coefficient.
// Products of canonical monomials pick up the shuffle sign on slots times the
// shuffle sign on coordinates.

#include <gerbeforms/poly.hpp>

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace gerbeforms {

// Sign of interleaving two disjoint ascending index sets a and b (as
// bitmasks) into one ascending set: parity of pairs (x in a, y in b), x > y.
inline int shuffle_sign(std::uint32_t a, std::uint32_t b) {
  int inversions = 0;
  for (std::uint32_t rest = b; rest; rest &= rest - 1) {
    int bit = std::countr_zero(rest);
    inversions += std::popcount(a >> (bit + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

struct WeilKey {
  std::uint32_t slots = 0;   // bit t-1 set <=> slot t occurs
  std::uint32_t coords = 0;  // bit a-1 set <=> coordinate a occurs

  friend bool operator==(const WeilKey&, const WeilKey&) = default;
  friend bool operator<(const WeilKey& x, const WeilKey& y) {
    int dx = std::popcount(x.slots), dy = std::popcount(y.slots);
    if (dx != dy) return dx < dy;
    if (x.slots != y.slots) return x.slots < y.slots;
    return x.coords < y.coords;
  }
};

class WeilElement {
 public:
  using Terms = std::map<WeilKey, Poly>;

  WeilElement() : slots_(0), dim_(0) {}
  WeilElement(int slots, int dim) : slots_(slots), dim_(dim) {
    if (slots < 0 || slots > 30 || dim < 0 || dim > 30)
      throw gf_error("infinitesimal algebra shape out of range");
  }

  static WeilElement zero(int slots, int dim) { return WeilElement(slots, dim); }

  static WeilElement from_poly(int slots, const Poly& p) {
    WeilElement w(slots, p.dim());
    if (!p.is_zero()) w.terms_.emplace(WeilKey{0, 0}, p);
    return w;
  }

  static WeilElement one(int slots, int dim) {
    return from_poly(slots, Poly::constant(dim, Rat(1)));
  }

  // The generator d(i,a), 1-based.
  static WeilElement generator(int slots, int dim, int i, int a) {
    WeilElement w(slots, dim);
    if (i < 1 || i > slots) throw gf_error("slot index out of range");
    if (a < 1 || a > dim) throw gf_error("coordinate index out of range");
    w.terms_.emplace(WeilKey{1u << (i - 1), 1u << (a - 1)},
                     Poly::constant(dim, Rat(1)));
    return w;
  }

  int slots() const { return slots_; }
  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }

  void add_term(const WeilKey& key, const Poly& p) {
    if (std::popcount(key.slots) != std::popcount(key.coords))
      throw gf_error("monomial with mismatched slot/coordinate count");
    if (p.is_zero()) return;
    auto [it, inserted] = terms_.emplace(key, p);
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend WeilElement operator+(const WeilElement& a, const WeilElement& b) {
    check_shape(a, b);
    WeilElement r = a;
    for (const auto& [k, p] : b.terms_) r.add_term(k, p);
    return r;
  }

  friend WeilElement operator-(const WeilElement& a, const WeilElement& b) {
    check_shape(a, b);
    WeilElement r = a;
    for (const auto& [k, p] : b.terms_) r.add_term(k, -p);
    return r;
  }

  friend WeilElement operator-(const WeilElement& a) {
    WeilElement r(a.slots_, a.dim_);
    for (const auto& [k, p] : a.terms_) r.terms_.emplace(k, -p);
    return r;
  }

  friend WeilElement operator*(const WeilElement& a, const WeilElement& b) {
    check_shape(a, b);
    WeilElement r(a.slots_, a.dim_);
    for (const auto& [ka, pa] : a.terms_) {
      for (const auto& [kb, pb] : b.terms_) {
        if (ka.slots & kb.slots) continue;   // repeated slot kills the product
        if (ka.coords & kb.coords) continue; // repeated coordinate likewise
        int sign = shuffle_sign(ka.slots, kb.slots) *
                   shuffle_sign(ka.coords, kb.coords);
        WeilKey key{ka.slots | kb.slots, ka.coords | kb.coords};
        r.add_term(key, Rat(sign) * (pa * pb));
      }
    }
    return r;
  }

  friend WeilElement operator*(const Poly& p, const WeilElement& a) {
    WeilElement r(a.slots_, a.dim_);
    if (p.is_zero()) return r;
    for (const auto& [k, q] : a.terms_) r.add_term(k, p * q);
    return r;
  }

  friend WeilElement operator*(const Rat& c, const WeilElement& a) {
    return Poly::constant(a.dim_, c) * a;
  }

  WeilElement& operator+=(const WeilElement& b) { return *this = *this + b; }
  WeilElement& operator-=(const WeilElement& b) { return *this = *this - b; }
  WeilElement& operator*=(const WeilElement& b) { return *this = *this * b; }

  friend bool operator==(const WeilElement& a, const WeilElement& b) {
    return a.slots_ == b.slots_ && a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const WeilElement& a, const WeilElement& b) {
    return !(a == b);
  }

  // Coefficient polynomial of the canonical monomial with the given masks.
  Poly coefficient(std::uint32_t slots_mask, std::uint32_t coords_mask) const {
    auto it = terms_.find(WeilKey{slots_mask, coords_mask});
    return it == terms_.end() ? Poly::zero(dim_) : it->second;
  }

  int max_nilpotent_degree() const {
    return terms_.empty() ? 0 : std::popcount(terms_.rbegin()->first.slots);
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, p] : terms_) {
      if (!out.empty()) out += " + ";
      std::string mono;
      std::uint32_t s = k.slots, c = k.coords;
      while (s) {
        int i = std::countr_zero(s) + 1, a = std::countr_zero(c) + 1;
        s &= s - 1;
        c &= c - 1;
        mono += "d(" + std::to_string(i) + "," + std::to_string(a) + ")";
      }
      if (mono.empty())
        out += p.to_string();
      else
        out += "(" + p.to_string() + ")*" + mono;
    }
    return out;
  }

 private:
  static void check_shape(const WeilElement& a, const WeilElement& b) {
    if (a.slots_ != b.slots_ || a.dim_ != b.dim_)
      throw gf_error("infinitesimal algebra shape mismatch");
  }

  int slots_;
  int dim_;
  Terms terms_;
};

// Ring homomorphism substituting the i-th infinitesimal displacement: for
// j >= 1 it sends d(i,a) -> d(j,a) for every coordinate a; for j == 0 it sends
// d(i,a) -> 0. Terms acquiring a repeated slot vanish; survivors pick up the
// sign of resorting the slot wedge.
inline WeilElement weil_degenerate(const WeilElement& w, int i, int j) {
  if (i < 1 || i > w.slots()) throw gf_error("degeneracy slot index out of range");
  if (j < 0 || j > w.slots()) throw gf_error("degeneracy target out of range");
  if (j == i) return w;
  WeilElement r(w.slots(), w.dim());
  const std::uint32_t ibit = 1u << (i - 1);
  const std::uint32_t jbit = j == 0 ? 0 : 1u << (j - 1);
  for (const auto& [k, p] : w.terms()) {
    if (!(k.slots & ibit)) {
      r.add_term(k, p);
      continue;
    }
    if (j == 0) continue;           // e_i -> 0 kills the term
    if (k.slots & jbit) continue;   // repeated slot in the wedge
    std::uint32_t rest = k.slots & ~ibit;
    std::uint32_t lo = std::min(ibit, jbit), hi = std::max(ibit, jbit);
    // Bits of the remaining wedge strictly between i and j count the
    // transpositions needed to resort after the substitution.
    std::uint32_t between = rest & (hi - 1) & ~((lo << 1) - 1);
    int sign = (std::popcount(between) & 1) ? -1 : 1;
    r.add_term(WeilKey{rest | jbit, k.coords}, Rat(sign) * p);
  }
  return r;
}

}  // namespace gerbeforms
