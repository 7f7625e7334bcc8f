#pragma once

// Seeded equivalence suite between the combinatorial and classical
// differentials: lifts random forms to the infinitesimal-simplex
// representation, applies the face-product differentials there, extracts the
// classical answer back, and compares it with the direct formulas. One
// record per (equation, degree) pair, aggregated over trials. The scalar
// worked example that pins the extraction sign runs first.

#include <gerbeforms/report.hpp>
#include <gerbeforms/simplicial.hpp>

#include <string>
#include <vector>

namespace gerbeforms {

struct EquivParams {
  std::uint64_t seed = 0;
  int trials1 = 25;  // 1-form trials
  int trials2 = 10;  // 2-form trials
  int dim = 3;
  int size = 3;    // matrix size of the conjugation instance
  int maxdeg = 2;  // polynomial coefficient degree bound
};

inline std::vector<Record> run_equiv_suite(const EquivParams& p) {
  InnerCrossedModule cm(p.size);

  std::vector<Record> records;
  auto find = [&](const std::string& id,
                  const std::vector<int>& tuple) -> Record& {
    for (Record& r : records)
      if (r.equation == id && r.tuple == tuple) return r;
    records.push_back(Record{id, tuple, true, ""});
    return records.back();
  };
  int trial = -1;
  auto check = [&](const std::string& id, const std::vector<int>& tuple,
                   const ExtractResult& got, const LieForm& want) {
    Record& r = find(id, tuple);
    if (!r.pass) return;
    std::string where =
        trial < 0 ? "worked example" : "trial " + std::to_string(trial);
    if (!got.ok) {
      r.pass = false;
      r.witness = where + ": " + got.witness;
      return;
    }
    LieForm residual = got.form - want;
    if (!residual.is_zero()) {
      r.pass = false;
      r.witness = where + ": " + residual.leading_term();
    }
  };

  // Worked example freezing the sign convention: the scalar abelian 1-form
  // x2 dx1 in two variables. Its combinatorial differential evaluates to
  // -1 on the full-slot monomial d(1,1)d(2,2), and extraction must
  // reproduce the classical differential -dx1^dx2.
  {
    LieForm w(1, 2, 1, Side::H);
    PolyMat c(1, 1, Poly::zero(2));
    c.at(0, 0) = Poly::variable(2, 2);
    w.add_coeff({1}, c);
    CombForm df = comb_d(comb_lift(w));
    ExtractResult got = comb_extract(df);
    check("defd1", {}, got, d1(w));
    Record& r = find("defd1", {});
    if (r.pass) {
      Poly lead = df.eval(2, {0, 1, 2}).at(0, 0).coefficient(0b11u, 0b11u);
      if (!(lead == Poly::constant(2, Rat(-1)))) {
        r.pass = false;
        r.witness = "worked example: full-slot coefficient is " +
                    lead.to_string() + ", want -1";
      }
    }
  }

  Rng root(p.seed);
  for (trial = 0; trial < p.trials1; ++trial) {
    Rng rng = root.child(trial);
    LieForm w = sample_lie_form(cm, rng, 1, p.dim, Side::H, p.maxdeg);
    LieForm m = sample_lie_form(cm, rng, 1, p.dim, Side::A, p.maxdeg);
    CombForm f = comb_lift(w);
    CombForm a = comb_lift(m);
    check("defd1", {1}, comb_extract(comb_d(f)), d1(w));
    check("d1tilde", {1}, comb_extract(comb_d_tilde(f)), d1_tilde(w));
    check("dtwist", {1}, comb_extract(comb_d_twisted(cm, f, a)),
          dn_m(cm, w, m));
  }
  for (trial = 0; trial < p.trials2; ++trial) {
    Rng rng = root.child(1000 + trial);
    LieForm t = sample_lie_form(cm, rng, 2, p.dim, Side::H, p.maxdeg);
    LieForm m = sample_lie_form(cm, rng, 1, p.dim, Side::A, p.maxdeg);
    CombForm f = comb_lift(t);
    CombForm a = comb_lift(m);
    check("defdn1", {2}, comb_extract(comb_d(f)), d(t));
    check("dtwist", {2}, comb_extract(comb_d_twisted(cm, f, a)),
          dn_m(cm, t, m));
  }
  return records;
}

}  // namespace gerbeforms
