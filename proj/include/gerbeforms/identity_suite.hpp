#pragma once

// Seeded identity suite for the forms calculus: samples random forms, group
// elements, and twists over the conjugation instance and checks the graded
// Lie / differential identities as exact residuals. One record per equation
// id, aggregated over all trials; a failing record carries the trial number
// and the leading monomial of the first nonvanishing residual.

#include <gerbeforms/calculus.hpp>
#include <gerbeforms/report.hpp>

#include <functional>
#include <string>
#include <vector>

namespace gerbeforms {

struct IdentityParams {
  std::uint64_t seed = 0;
  int trials = 100;
  int dim = 3;
  int size = 3;    // matrix size of the conjugation instance
  int maxdeg = 2;  // polynomial coefficient degree bound
};

inline std::vector<Record> run_identity_suite(const IdentityParams& p) {
  InnerCrossedModule cm(p.size);
  const int nd = p.dim;

  std::vector<Record> records;
  auto find = [&](const std::string& id) -> Record& {
    for (Record& r : records)
      if (r.equation == id) return r;
    records.push_back(Record{id, {}, true, ""});
    return records.back();
  };
  int trial = 0;
  auto check = [&](const std::string& id, const LieForm& residual) {
    Record& r = find(id);
    if (!r.pass) return;
    if (!residual.is_zero()) {
      r.pass = false;
      r.witness = "trial " + std::to_string(trial) + ": " + residual.leading_term();
    }
  };

  Rng root(p.seed);
  for (trial = 0; trial < p.trials; ++trial) {
    Rng rng = root.child(trial);

    LieForm w1 = sample_lie_form(cm, rng, 1, nd, Side::H, p.maxdeg);   // 1-forms
    LieForm w2 = sample_lie_form(cm, rng, 1, nd, Side::H, p.maxdeg);
    LieForm t1 = sample_lie_form(cm, rng, 2, nd, Side::H, p.maxdeg);   // 2-forms
    LieForm t2 = sample_lie_form(cm, rng, 2, nd, Side::H, p.maxdeg);
    LieForm m = sample_lie_form(cm, rng, 1, nd, Side::A, p.maxdeg);    // twist
    LieForm eta = sample_lie_form(cm, rng, 1, nd, Side::H, p.maxdeg);
    LieForm ua = sample_lie_form(cm, rng, 1, nd, Side::A, p.maxdeg);   // A-side
    LieForm ua2 = sample_lie_form(cm, rng, 2, nd, Side::A, p.maxdeg);
    GroupMap g = cm.sample_h(rng, nd, p.maxdeg);
    GroupMap u = cm.sample_a(rng, nd, p.maxdeg);

    const Rat half = rat_from_long(1, 2);

    // Shared subexpressions (several identities consume the same pieces).
    const GroupMap ginv = group_inverse(g);
    const LieForm d1m = d1(m);
    const LieForm dnm_w1 = dn_m(cm, w1, m);
    const LieForm dnm_t1 = dn_m(cm, t1, m);
    const LieForm ieta = i_push(cm, eta);

    // Graded commutativity of the same-side bracket, degree pairs (1,1),
    // (1,2), (2,2): [f,g] = (-1)^{|f||g|+1} [g,f].
    check("grcom", bracket(w1, w2) - bracket(w2, w1));
    check("grcom", bracket(w1, t1) + bracket(t1, w1));
    check("grcom", bracket(t1, t2) + bracket(t2, t1));

    // Graded Jacobi on (1,1,1) and (1,1,2).
    check("jac", bracket(w1, bracket(w2, eta)) +
                     bracket(w2, bracket(eta, w1)) +
                     bracket(eta, bracket(w1, w2)));
    {
      // degrees |f|=1,|g|=1,|h|=2: signs (-1)^{|f||h|}, (-1)^{|f||g|}, (-1)^{|g||h|}
      LieForm s = bracket(w1, bracket(w2, t1)) - bracket(w2, bracket(t1, w1));
      s += bracket(t1, bracket(w1, w2));
      check("jac", s);
    }

    // Degree-1 self-bracket identities.
    check("jac1", bracket(w1, bracket(w1, w1)));
    check("jac3", bracket(w1, half * bracket(w2, w2)) -
                      bracket(bracket(w1, w2), w2));

    // d o d = 0 in degrees >= 2 (content requires dim >= deg + 2).
    check("ddzero", d(d(t1)));

    // Degree-0/1 composites: d1(d0 g) = 0 and the reversed-order analogue.
    check("d0d1", d1(d0(g)));
    check("defd0d1a", d1_tilde(d0_tilde(g)));

    // Additivity defect of the quadratic differential.
    check("d1add", d1(w1 + w2) - d1(w1) - d1(w2) - bracket(w1, w2));
    check("minom", d1(-w1) + d1(w1) - bracket(w1, w1));
    check("d1add-a", dn_m(cm, -w1, m) + dnm_w1 - bracket(w1, w1));

    // Changing the twist by the image of an H-side 1-form.
    check("addm", dn_m(cm, w1, m + ieta) - dnm_w1 - bracket(eta, w1));
    check("addm", dn_m(cm, t1, m + ieta) - dnm_t1 - bracket(eta, t1));

    // Curvature of the twisted complex in degrees >= 2.
    check("dndn1", dn_m(cm, dnm_t1, m) - act_bracket(cm, d1m, t1));

    // ... and at the bottom of the complex, both orientations.
    check("dndn1a", dn_m(cm, d0_m(cm, g, m), m) -
                        group_pair_form(cm, ginv, d1m));
    check("dndn1a", d1_tilde_m(cm, d0_tilde_m(cm, g, m), m) -
                        act_bracket0(cm, d1m, g));

    // Twisted non-Bianchi in degree 1, in both stated expansions.
    {
      LieForm lhs = dn_m(cm, dnm_w1, m);
      LieForm br_dm_w1 = act_bracket(cm, d1m, w1);
      LieForm rhs1 = br_dm_w1 + bracket(dnm_w1, w1);
      LieForm rhs2 = br_dm_w1 + bracket(d1(w1), w1) +
                     bracket(act_bracket(cm, m, w1), w1);
      check("falsebianchi", lhs - rhs1);
      check("falsebianchi", rhs1 - rhs2);
    }

    // Classical Bianchi: twisting by the image of the form itself.
    check("bianchiclas", dn_m(cm, d1(w1), i_push(cm, w1)));

    // Functoriality of d1 under gauge transformation by an H-group element.
    check("funct:d1", adjoint(g, d1(w1)) - d1(twisted_conjugate(g, w1)));

    // Functoriality of dn_m under an A-group automorphism, twisted form:
    // u(dn_m w) = dn_{^{u*}m}(u w).
    {
      LieForm um = twisted_conjugate(u, m);
      LieForm uw1 = apply_aut(cm, u, w1);
      LieForm ut1 = apply_aut(cm, u, t1);
      LieForm u_dnm_w1 = apply_aut(cm, u, dnm_w1);
      LieForm u_dnm_t1 = apply_aut(cm, u, dnm_t1);
      check("funct:dnm", u_dnm_w1 - dn_m(cm, uw1, um));
      check("funct:dnm", u_dnm_t1 - dn_m(cm, ut1, um));

      // ... and the expanded version through [u,m] = ^u m - m:
      // u(dn_m w) = dn_m(u w) + [[u,m], u w] + [u du^{-1}, u w].
      LieForm ubm = adjoint(u, m) - m;
      LieForm udu = g_dginv(u);
      check("funct:dnm1",
            u_dnm_w1 - dn_m(cm, uw1, m) -
                act_bracket(cm, ubm, uw1) - act_bracket(cm, udu, uw1));
      check("funct:dnm1",
            u_dnm_t1 - dn_m(cm, ut1, m) -
                act_bracket(cm, ubm, ut1) - act_bracket(cm, udu, ut1));
    }

    // Leibniz rule for d in degrees >= 2, same-side and crossed pairings.
    check("leibniz", d(bracket(t1, t2)) - bracket(d(t1), t2) - bracket(t1, d(t2)));
    check("leibniz", d(act_bracket(cm, ua2, t1)) -
                         act_bracket(cm, d(ua2), t1) -
                         act_bracket(cm, ua2, d(t1)));

    // The boundary intertwines the pairings.
    check("comp:i-bra", act_bracket(cm, ieta, w1) - bracket(eta, w1));
    check("comp:i-bra",
          i_push(cm, act_bracket(cm, ua, w1)) - bracket(ua, i_push(cm, w1)));

    // Graded commutativity of the crossed pairing, (1,1), (2,1), (1,2).
    check("grcom1", act_bracket_flip(cm, w1, ua) - act_bracket(cm, ua, w1));
    check("grcom1", act_bracket_flip(cm, t1, ua) + act_bracket(cm, ua, t1));
    check("grcom1", act_bracket_flip(cm, w1, ua2) + act_bracket(cm, ua2, w1));

    // A-group elements transport the degree-0 pairing.
    check("compbra", apply_aut(cm, u, act_bracket0(cm, ua, g)) -
                         act_bracket0(cm, apply_aut(cm, u, ua),
                                      cm.act_group(u, g)));

    // Conjugation exchanges the two degree-0 pairings: [g^{-1}, u] = [u,g]^g.
    check("crosshomprop",
          group_pair_form(cm, ginv, ua) -
              adjoint(ginv, act_bracket0(cm, ua, g)));
  }
  return records;
}

}  // namespace gerbeforms
