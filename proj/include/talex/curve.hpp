#pragma once

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "talex/alexander.hpp"
#include "talex/diagnostics.hpp"
#include "talex/parallel.hpp"
#include "talex/presentation.hpp"
#include "talex/repn.hpp"

namespace talex {

// One irreducible component of the curve: user-supplied Euler
// characteristic, weight q, a meridian word in the global generators, and
// the number of singular points lying on the component.
struct CurveComponent {
  std::string label;
  int chi = 0;
  long weight = 1;
  Word meridian;
  int sing_count = 0;
};

// One singular point (or the link at infinity): the local link group and
// the word map realizing its inclusion into the global group.
struct CurveSingularity {
  std::string label;
  Presentation pres;
  std::vector<Word> inclusion;  // global word per local generator
  bool at_infinity = false;
};

struct CurveData {
  std::vector<CurveComponent> components;
  std::vector<CurveSingularity> singularities;

  void check(const Presentation& global, const Epsilon& eps) const {
    if (components.empty())
      throw validation_error("curve data needs at least one component");
    long g = 0;
    for (const auto& c : components) {
      if (c.weight == 0)
        throw validation_error("component '" + c.label + "' has weight 0");
      g = std::gcd(g, c.weight);
      if (c.meridian.max_generator() >
          static_cast<int>(global.generator_count()))
        throw validation_error("meridian of component '" + c.label +
                               "' uses an undeclared generator");
      if (eps.of(c.meridian) != c.weight)
        throw validation_error(
            "meridian of component '" + c.label + "' has epsilon value " +
            std::to_string(eps.of(c.meridian)) + ", declared weight " +
            std::to_string(c.weight));
      if (c.sing_count < 0)
        throw validation_error("component '" + c.label +
                               "' has negative singularity count");
    }
    if (g != 1)
      throw validation_error("component weights have gcd != 1");
    for (std::size_t i = 0; i < global.generator_count(); ++i) {
      const std::string& label = global.component_of[i];
      if (label.empty()) continue;
      bool declared = false;
      for (const auto& c : components)
        if (c.label == label) declared = true;
      if (!declared)
        throw validation_error("generator '" + global.generators[i] +
                               "' is marked with component '" + label +
                               "' which the curve does not declare");
    }
    int infinities = 0;
    for (const auto& s : singularities) {
      if (s.at_infinity) ++infinities;
      if (s.inclusion.size() != s.pres.generator_count())
        throw validation_error("singularity '" + s.label +
                               "' inclusion map is incomplete");
      for (const auto& w : s.inclusion)
        if (w.max_generator() > static_cast<int>(global.generator_count()))
          throw validation_error("singularity '" + s.label +
                                 "' inclusion uses an undeclared generator");
    }
    if (infinities != 1)
      throw validation_error(
          "curve data must contain exactly one link at infinity, found " +
          std::to_string(infinities));
  }

  int affine_singularity_count() const {
    int s = 0;
    for (const auto& sg : singularities)
      if (!sg.at_infinity) ++s;
    return s;
  }

  // chi(C) from the per-component data via the inclusion-exclusion relation
  // sum_l (s_l - chi(C_l)) = s - chi(C).
  int total_chi() const {
    int chi = 0;
    for (const auto& c : components) chi += c.chi - c.sing_count;
    return chi + affine_singularity_count();
  }
};

// The correction factor prod_l det(Id - Phi(nu_l))^{s_l - chi(C_l)}.
// Negative exponents live in the denominator.  The determinant only
// depends on the conjugacy class of the meridian; that invariance is
// asserted here against a conjugated copy.
inline LaurentFraction alpha_factor(const CurveData& curve,
                                    const Presentation& global,
                                    const Epsilon& eps,
                                    const Representation& rho) {
  const int order = rho.order();
  LaurentFraction alpha = LaurentFraction::one(order);
  for (const auto& c : curve.components) {
    LaurentMatrix m = phi_of_word(c.meridian, eps, rho);
    const int d = rho.dim();
    LaurentMatrix id_minus(d, d, order);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        id_minus.at(i, j) = -m.at(i, j);
        if (i == j) id_minus.at(i, j) += LaurentPoly::one(order);
      }
    const LaurentPoly a = det(id_minus);
    if (a.is_zero())
      throw engine_error("alpha factor vanishes on component '" + c.label +
                         "': det(Id - Phi(meridian)) = 0");
    if (!global.generators.empty()) {
      const Word conj = c.meridian.conjugated_by(Word::generator(1));
      LaurentMatrix mc = phi_of_word(conj, eps, rho);
      LaurentMatrix idc(d, d, order);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          idc.at(i, j) = -mc.at(i, j);
          if (i == j) idc.at(i, j) += LaurentPoly::one(order);
        }
      if (det(idc) != a)
        throw engine_error(
            "alpha factor is not conjugation invariant on component '" +
            c.label + "'");
    }
    alpha = alpha * LaurentFraction::power(a, c.sing_count - c.chi);
  }
  return alpha;
}

// Twist induced on a local link group through its inclusion words.
struct InducedTwist {
  Epsilon eps;
  Representation rho;
};

inline InducedTwist induce_twist(const CurveSingularity& sing,
                                 const Epsilon& eps,
                                 const Representation& rho) {
  InducedTwist t{Epsilon{}, rho};
  std::vector<CycloMatrix> images;
  for (const auto& w : sing.inclusion) {
    t.eps.weights.push_back(eps.of(w));
    images.push_back(rho.of(w));
  }
  t.rho = Representation::make(std::move(images));
  return t;
}

struct LocalInvariant {
  std::string label;
  bool at_infinity = false;
  HomologyOrders orders;
  LaurentFraction delta;  // Delta^1 / Delta^0 of the local link
  bool acyclic = false;
  std::string note;
};

// Restrict (eps, rho) through each inclusion and run the engine on the
// local presentations.  A local group whose twisted homology is not
// torsion is reported, not thrown: it fails the theorem gate downstream.
inline std::vector<LocalInvariant> local_invariants(const CurveData& curve,
                                                    const Presentation& /*global*/,
                                                    const Epsilon& eps,
                                                    const Representation& rho) {
  auto one = [&](std::size_t k) -> LocalInvariant {
    const CurveSingularity& sing = curve.singularities[k];
    LocalInvariant li;
    li.label = sing.label;
    li.at_infinity = sing.at_infinity;
    const InducedTwist t = induce_twist(sing, eps, rho);
    ValidationReport v = validate(sing.pres, t.eps, t.rho, false);
    if (!v.ok())
      throw validation_error("induced twist invalid on singularity '" +
                             sing.label + "':\n" + v.str());
    const TwistedComplex c = assemble_complex(sing.pres, t.eps, t.rho);
    li.orders = homology_orders(c);
    li.acyclic = li.orders.acyclic();
    if (li.orders.delta0.is_zero()) {
      li.delta = LaurentFraction(rho.order());
      li.note = "H0 not torsion";
    } else {
      li.delta = LaurentFraction::of(li.orders.delta1, li.orders.delta0);
      if (!li.orders.h1_torsion()) li.note = "H1 not torsion";
    }
    return li;
  };
  return parallel_map<LocalInvariant>(curve.singularities.size(), one, 2);
}

enum class Verdict { yes, no, indeterminate };

inline const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::yes: return "true";
    case Verdict::no: return "false";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

// Outcome of the global/local divisibility harness.  The residual is the
// candidate det(phi) recovered as (alpha * prod local Delta) / (Delta *
// conj(Delta)); it is never computed from an intersection pairing here.
struct TheoremReport {
  LaurentFraction alpha;
  std::vector<LocalInvariant> locals;
  LaurentFraction lhs, rhs_known, residual;
  Verdict divisible = Verdict::indeterminate;
  bool self_conjugate = false;
  bool unitary_gate = false;
  bool local_torsion_gate = false;
  bool global_torsion = false;
  std::vector<std::string> notes;
};

inline TheoremReport theorem_check(const CurveData& curve,
                                   const Presentation& global,
                                   const Epsilon& eps,
                                   const Representation& rho) {
  ValidationReport v = validate(global, eps, rho);
  if (!v.ok()) throw validation_error("twist data invalid:\n" + v.str());
  curve.check(global, eps);

  TheoremReport rep;
  rep.unitary_gate = is_unitary(rho);
  if (!rep.unitary_gate)
    rep.notes.push_back("rho is not unitary in the standard hermitian form");

  rep.alpha = alpha_factor(curve, global, eps, rho);
  rep.locals = local_invariants(curve, global, eps, rho);
  rep.local_torsion_gate = true;
  for (const auto& li : rep.locals)
    if (!li.acyclic) {
      rep.local_torsion_gate = false;
      rep.notes.push_back("local '" + li.label + "' fails the torsion gate" +
                          (li.note.empty() ? "" : " (" + li.note + ")"));
    }

  const TwistedComplex c = assemble_complex(global, eps, rho);
  const HomologyOrders orders = homology_orders(c);
  rep.global_torsion =
      orders.h1_torsion() && !orders.delta0.is_zero();

  rep.lhs = rep.alpha;
  for (const auto& li : rep.locals) rep.lhs = rep.lhs * li.delta;

  if (!rep.global_torsion) {
    rep.notes.push_back("global twisted homology not torsion; residual undefined");
    rep.divisible = Verdict::indeterminate;
    return rep;
  }
  const LaurentFraction delta =
      LaurentFraction::of(orders.delta1, orders.delta0);
  rep.rhs_known = delta * delta.conj();
  if (rep.rhs_known.is_zero()) {
    rep.notes.push_back("Delta vanishes; residual undefined");
    rep.divisible = Verdict::indeterminate;
    return rep;
  }
  rep.residual = rep.lhs / rep.rhs_known;
  rep.self_conjugate = (rep.residual == rep.residual.conj());
  if (rep.unitary_gate && rep.local_torsion_gate)
    rep.divisible =
        rep.residual.is_polynomial() ? Verdict::yes : Verdict::no;
  else
    rep.divisible = Verdict::indeterminate;
  return rep;
}

// Classical specialization: trivial rho over Q, all weights 1, stated with
// the classical Delta^1 values directly:
//   (t-1)^{1-chi(C)} prod_k Delta^1(L_k) = (Delta^1(C))^2 * residual.
// Also runs the twisted harness on the same classical data and records
// whether the two residuals agree.
struct CorollaryReport {
  TheoremReport classical;       // the corollary-form report
  bool consistent_with_theorem = false;
};

inline CorollaryReport corollary_check(const CurveData& curve,
                                       const Presentation& global) {
  for (const auto& c : curve.components)
    if (c.weight != 1)
      throw validation_error(
          "corollary check requires all component weights equal to 1 "
          "(component '" + c.label + "' has " + std::to_string(c.weight) +
          ")");

  const Epsilon eps = Epsilon::all_ones(global.generator_count());
  const Representation rho = Representation::trivial(global.generator_count());
  ValidationReport v = validate(global, eps, rho);
  if (!v.ok()) throw validation_error("classical twist invalid:\n" + v.str());
  curve.check(global, eps);

  CorollaryReport out;
  TheoremReport& rep = out.classical;
  rep.unitary_gate = true;  // the trivial representation is unitary

  rep.locals = local_invariants(curve, global, eps, rho);
  rep.local_torsion_gate = true;
  for (auto& li : rep.locals) {
    if (!li.acyclic) {
      rep.local_torsion_gate = false;
      rep.notes.push_back("local '" + li.label + "' fails the torsion gate");
    }
    // The corollary is stated with the classical Delta1 of each local link.
    li.delta = LaurentFraction::from_poly(li.orders.delta1);
  }

  const int chi = curve.total_chi();
  const LaurentPoly t_minus_one = LaurentPoly::t_power_minus_one(1, 1);
  rep.alpha = LaurentFraction::power(t_minus_one, 1 - chi);

  const TwistedComplex c = assemble_complex(global, eps, rho);
  const HomologyOrders orders = homology_orders(c);
  rep.global_torsion = orders.h1_torsion() && !orders.delta0.is_zero();

  rep.lhs = rep.alpha;
  for (const auto& li : rep.locals)
    rep.lhs = rep.lhs * LaurentFraction::from_poly(li.orders.delta1);

  if (!rep.global_torsion) {
    rep.notes.push_back("classical homology not torsion; residual undefined");
    rep.divisible = Verdict::indeterminate;
    return out;
  }
  rep.rhs_known = LaurentFraction::from_poly(orders.delta1 * orders.delta1);
  if (rep.rhs_known.is_zero()) {
    rep.notes.push_back("classical Delta1 vanishes; residual undefined");
    rep.divisible = Verdict::indeterminate;
    return out;
  }
  rep.residual = rep.lhs / rep.rhs_known;
  rep.self_conjugate = (rep.residual == rep.residual.conj());
  rep.divisible = rep.local_torsion_gate
                      ? (rep.residual.is_polynomial() ? Verdict::yes
                                                      : Verdict::no)
                      : Verdict::indeterminate;

  const TheoremReport twisted = theorem_check(curve, global, eps, rho);
  out.consistent_with_theorem =
      twisted.global_torsion && rep.global_torsion &&
      twisted.residual == rep.residual;
  return out;
}

// Characteristic-variety scan: fixed eps = 1 on every generator, rank-1
// characters of order N per component; membership is (t-1) | Delta^1 with
// Delta^1 = 0 counting as member (zero is a non-trivial polynomial).
struct ScanRow {
  std::vector<int> exponents;
  LaurentPoly delta1;
  bool member = false;
};

struct ScanReport {
  int scan_order = 1;
  std::vector<std::string> components;
  std::vector<ScanRow> rows;
};

inline ScanReport cv_scan(const Presentation& pres, int N,
                          std::size_t cap = 10000) {
  ScanReport report;
  report.scan_order = N;
  report.components = pres.component_labels();
  const Epsilon eps = Epsilon::all_ones(pres.generator_count());
  const std::vector<Character> chars = rank1_characters(pres, N, cap);
  const LaurentPoly t_minus_one = LaurentPoly::t_power_minus_one(N, 1);

  auto one = [&](std::size_t i) -> ScanRow {
    const Character& ch = chars[i];
    ValidationReport v = validate(pres, eps, ch.rep);
    if (!v.ok())
      throw validation_error("character fails validation:\n" + v.str());
    const TwistedComplex c = assemble_complex(pres, eps, ch.rep);
    const HomologyOrders orders = homology_orders(c);
    ScanRow row;
    row.exponents = ch.exponents;
    row.delta1 = orders.delta1;
    row.member = orders.delta1.is_zero() || t_minus_one.divides(orders.delta1);
    return row;
  };
  report.rows = parallel_map<ScanRow>(chars.size(), one, 4);
  return report;
}

}  // namespace talex
