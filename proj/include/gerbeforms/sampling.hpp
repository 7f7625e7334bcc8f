#pragma once

// Random generation of small exact polynomials and matrices. Coefficients are
// small rationals (denominators 1 or 2) so products stay readable; everything
// downstream is exact regardless of magnitude.

#include <gerbeforms/matrix.hpp>
#include <gerbeforms/poly.hpp>
#include <gerbeforms/rng.hpp>

#include <vector>

namespace gerbeforms {

// All exponent vectors of total degree <= maxdeg, in a fixed deterministic
// order (ascending total degree; stable generation order within a degree).
inline std::vector<Expo> enumerate_monomials(int dim, int maxdeg) {
  std::vector<Expo> out;
  std::vector<Expo> cur{Expo(dim, 0)};
  out.push_back(Expo(dim, 0));
  for (int deg = 1; deg <= maxdeg; ++deg) {
    std::vector<Expo> next;
    // Build degree-deg exponents from degree-(deg-1) ones without duplicates:
    // only increment positions at or after the last incremented one.
    for (const Expo& e : cur) {
      int start = 0;
      for (int i = dim - 1; i >= 0; --i)
        if (e[i] > 0) {
          start = i;
          break;
        }
      for (int i = start; i < dim; ++i) {
        Expo e2 = e;
        e2[i] += 1;
        next.push_back(e2);
      }
    }
    for (const Expo& e : next) out.push_back(e);
    cur = std::move(next);
  }
  return out;
}

// Nonzero small rational: numerator in [-4,4]\{0}, denominator 1 or 2.
inline Rat sample_coeff(Rng& rng) {
  long num = rng.range(1, 4);
  if (rng.chance(1, 2)) num = -num;
  long den = rng.chance(1, 4) ? 2 : 1;
  return rat_from_long(num, den);
}

// Sparse random polynomial of degree <= maxdeg; each monomial is kept with
// probability keep_num/keep_den. May be zero.
inline Poly sample_poly(Rng& rng, int dim, int maxdeg, std::uint64_t keep_num = 1,
                        std::uint64_t keep_den = 2) {
  Poly p(dim);
  for (const Expo& e : enumerate_monomials(dim, maxdeg))
    if (rng.chance(keep_num, keep_den)) p.add_term(e, sample_coeff(rng));
  return p;
}

// Random polynomial guaranteed nonzero (at least one monomial).
inline Poly sample_poly_nonzero(Rng& rng, int dim, int maxdeg) {
  Poly p = sample_poly(rng, dim, maxdeg);
  if (p.is_zero()) {
    auto monos = enumerate_monomials(dim, maxdeg);
    p.add_term(monos[rng.below(monos.size())], sample_coeff(rng));
  }
  return p;
}

// Single random monomial of degree <= maxdeg with a small coefficient. Used
// where the sample enters long products (group elements built from shears),
// keeping entry term counts bounded while staying degree-faithful.
inline Poly sample_monomial(Rng& rng, int dim, int maxdeg) {
  auto monos = enumerate_monomials(dim, maxdeg);
  Poly p(dim);
  p.add_term(monos[rng.below(monos.size())], sample_coeff(rng));
  return p;
}

// Random size x size matrix with sparse polynomial entries.
inline PolyMat sample_poly_matrix(Rng& rng, int size, int dim, int maxdeg) {
  PolyMat m(size, size, Poly::zero(dim));
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j)
      if (rng.chance(3, 5)) m.at(i, j) = sample_poly(rng, dim, maxdeg, 2, 5);
  return m;
}

}  // namespace gerbeforms
