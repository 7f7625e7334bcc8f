#pragma once

// Exact rational scalars. All arithmetic in this library is exact over the
// rationals: results are canonical (gcd-reduced, positive denominator) and
// identities are decided by testing residuals for identical vanishing, never
// by numeric tolerance.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gerbeforms {

using Rat = mpq_class;

// Library-level error for rejected input (shape, degree, or side mismatches,
// malformed literals, out-of-range indices). Checker *failures* are reported
// as data, not exceptions; gf_error means the request itself was invalid.
class gf_error : public std::runtime_error {
 public:
  explicit gf_error(const std::string& what) : std::runtime_error(what) {}
};

inline Rat rat_from_long(long n, long d = 1) {
  if (d == 0) throw gf_error("rational with zero denominator");
  Rat q(n, d);
  q.canonicalize();
  return q;
}

// Parses "n" or "n/d" with optional sign; exact round-trip with rat_to_string.
inline Rat rat_from_string(const std::string& text) {
  if (text.empty()) throw gf_error("empty rational literal");
  Rat q;
  if (q.set_str(text, 10) != 0) throw gf_error("bad rational literal: " + text);
  if (q.get_den() == 0) throw gf_error("rational with zero denominator: " + text);
  q.canonicalize();
  return q;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline bool rat_is_zero(const Rat& q) { return sgn(q) == 0; }

}  // namespace gerbeforms
