// Acceptance suite: runs every acceptance criterion at its stated tolerance
// (all equalities exact up to units) and prints one pass/fail line per
// criterion.  Exit status is nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "talex/alexander.hpp"
#include "talex/curve.hpp"
#include "talex/input.hpp"
#include "talex/report.hpp"
#include "testutil.hpp"

using namespace talex;

namespace {

struct Failure {
  std::string what;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure{what};
}

LaurentPoly qpoly(std::initializer_list<std::pair<long, int>> terms,
                  int order = 1) {
  LaurentPoly p(order);
  for (auto [c, e] : terms)
    p += LaurentPoly::term(CycloNumber::from_rational(Rational(c), order), e);
  return p;
}

Document fixture_doc(const std::string& name) {
  return parse_document(testutil::fixture(name));
}

double run_timed(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

// ---- criterion 1: the Zariski pair ------------------------------------

void criterion_zariski_pair() {
  const LaurentPoly one = qpoly({{1, 0}});
  const LaurentPoly t_plus_one = qpoly({{1, 1}, {1, 0}});
  const LaurentPoly t_minus_one = qpoly({{1, 1}, {-1, 0}});

  auto c1 = fixture_doc("zariski_pair_curve1.json");
  auto c2 = fixture_doc("zariski_pair_curve2.json");
  InvariantReport r1, r2;
  const double s1 = run_timed(
      [&] { r1 = compute_invariants(c1.pres, c1.eps, c1.rho); });
  const double s2 = run_timed(
      [&] { r2 = compute_invariants(c2.pres, c2.eps, c2.rho); });
  require(r1.wada.value == LaurentFraction::from_poly(one),
          "curve 1 twisted Delta != 1");
  require(r2.wada.value == LaurentFraction::from_poly(t_plus_one),
          "curve 2 twisted Delta != t+1");
  require(s1 < 1.0 && s2 < 1.0, "runtime exceeded 1 s");

  // Classical polynomials carry no information beyond H1 = Z^2: Delta = 1
  // and Delta1 equals the abelian baseline t-1, identical for both curves.
  auto k1 = fixture_doc("zariski_pair_curve1_classical.json");
  auto k2 = fixture_doc("zariski_pair_curve2_classical.json");
  auto rk1 = compute_invariants(k1.pres, k1.eps, k1.rho);
  auto rk2 = compute_invariants(k2.pres, k2.eps, k2.rho);
  require(rk1.wada.value.is_one_up_to_units(),
          "curve 1 classical Delta != 1");
  require(rk2.wada.value.is_one_up_to_units(),
          "curve 2 classical Delta != 1");
  require(eq_up_to_units(rk1.orders.delta1, t_minus_one) &&
              eq_up_to_units(rk2.orders.delta1, t_minus_one),
          "classical Delta1 differs from the abelian baseline t-1");
  require(eq_up_to_units(rk1.orders.delta1, rk2.orders.delta1),
          "classical Delta1 distinguishes the pair (it must not)");
}

// ---- criterion 2: nodal degeneration ----------------------------------

void criterion_nodal_degeneration() {
  auto doc = fixture_doc("nodal_degeneration.json");
  require(validate(doc.pres, doc.eps, doc.rho).ok(),
          "displayed twist data does not validate");
  InvariantReport rep;
  const double secs = run_timed(
      [&] { rep = compute_invariants(doc.pres, doc.eps, doc.rho); });
  require(rep.wada.value ==
              LaurentFraction::from_poly(qpoly({{1, 1}, {1, 0}})),
          "Delta != t+1");
  require(secs < 1.0, "runtime exceeded 1 s");
}

// ---- criterion 3: classical link sanity --------------------------------

void criterion_link_sanity() {
  BraidWord trefoil;
  trefoil.strands = 2;
  trefoil.letters = {1, 1, 1};
  auto p3 = closure_presentation(trefoil);
  Epsilon eps = Epsilon::all_ones(2);
  auto rho = Representation::trivial(2);
  auto h3 = homology_orders(assemble_complex(p3, eps, rho));
  require(eq_up_to_units(h3.delta1, qpoly({{1, 2}, {-1, 1}, {1, 0}})),
          "trefoil Delta1 != t^2-t+1");
  auto tau = torsion(h3);
  require(tau.defined, "trefoil torsion undefined");
  require(tau.value == LaurentFraction::of(qpoly({{1, 2}, {-1, 1}, {1, 0}}),
                                           qpoly({{1, 1}, {-1, 0}})),
          "trefoil tau != (t^2-t+1)/(t-1)");
  // (t-1) tau = Delta_L
  require(tau.value * LaurentFraction::from_poly(qpoly({{1, 1}, {-1, 0}})) ==
              LaurentFraction::from_poly(h3.delta1),
          "(t-1) tau != Delta_L for the trefoil");

  BraidWord hopf;
  hopf.strands = 2;
  hopf.letters = {1, 1};
  auto p2 = closure_presentation(hopf);
  auto h2 = homology_orders(assemble_complex(p2, eps, rho));
  require(eq_up_to_units(h2.delta1, qpoly({{1, 1}, {-1, 0}})),
          "hopf Delta1 != t-1");
}

// ---- criterion 4: Wada vs SNF oracle equivalence -----------------------

struct RandomInstance {
  Presentation pres;
  Epsilon eps;
  Representation rho;
};

// Random twists that are valid by construction: braid closures carry
// component-constant rank-1 characters; commutator presentations carry
// diagonal images (which commute).
RandomInstance random_instance() {
  if (testutil::rand_int(0, 1) == 0) {
    const int d = testutil::rand_int(2, 3);
    BraidWord b;
    b.strands = d;
    for (int i = 0, n = testutil::rand_int(1, 5); i < n; ++i) {
      const int k = testutil::rand_int(1, d - 1);
      b.letters.push_back(testutil::rand_int(0, 1) ? k : -k);
    }
    RandomInstance inst;
    inst.pres = closure_presentation(b);
    inst.eps = Epsilon::all_ones(inst.pres.generator_count());
    const int order = testutil::rand_int(1, 6);
    const auto labels = inst.pres.component_labels();
    std::vector<int> exp_of_label(labels.size());
    for (auto& e : exp_of_label) e = testutil::rand_int(0, order - 1);
    std::vector<CycloNumber> values;
    for (std::size_t g = 0; g < inst.pres.generator_count(); ++g) {
      const auto it = std::find(labels.begin(), labels.end(),
                                inst.pres.component_of[g]);
      values.push_back(CycloNumber::zeta_power(
          order,
          exp_of_label[static_cast<std::size_t>(it - labels.begin())]));
    }
    inst.rho = Representation::rank1(values);
    return inst;
  }
  const int m = testutil::rand_int(2, 3);
  const int n = testutil::rand_int(1, 3);
  const int order = testutil::rand_int(1, 6);
  const int dim = testutil::rand_int(1, 2);
  RandomInstance inst;
  for (int g = 0; g < m; ++g)
    inst.pres.generators.push_back(std::string(1, static_cast<char>('a' + g)));
  inst.pres.component_of.assign(static_cast<std::size_t>(m), "");
  for (int r = 0; r < n; ++r) {
    const Word u = testutil::rand_word(m, 4);
    const Word v = testutil::rand_word(m, 4);
    const Word rel = u * v * u.inverse() * v.inverse();
    if (!rel.empty()) inst.pres.relators.push_back(rel);
  }
  for (int g = 0; g < m; ++g)
    inst.eps.weights.push_back(testutil::rand_int(1, 3));
  inst.eps.weights[0] = 1;
  std::vector<CycloMatrix> images;
  for (int g = 0; g < m; ++g) {
    CycloMatrix im(dim, order);
    for (int d = 0; d < dim; ++d)
      im.at(d, d) =
          CycloNumber::zeta_power(order, testutil::rand_int(0, order - 1));
    images.push_back(im);
  }
  inst.rho = Representation::make(std::move(images));
  return inst;
}

void criterion_wada_oracle() {
  const double secs = run_timed([&] {
    // Fixture suite first.
    const std::vector<std::string> fixtures = {
        "zariski_pair_curve1.json",  "zariski_pair_curve2.json",
        "zariski_pair_curve1_classical.json", "zariski_pair_curve2_classical.json",
        "nodal_degeneration.json",   "trefoil_closure.json",
        "hopf_closure.json",  "two_lines.json",
        "cuspidal_cubic.json"};
    for (const auto& name : fixtures) {
      auto doc = fixture_doc(name);
      auto c = assemble_complex(doc.pres, doc.eps, doc.rho);
      auto h = homology_orders(c);
      if (!h.h1_torsion() || h.delta0.is_zero()) continue;
      auto w = wada_invariant(doc.pres, doc.eps, doc.rho, &c);
      require(w.value == LaurentFraction::of(h.delta1, h.delta0),
              "fixture " + name + ": wada != Delta1/Delta0");
    }
    // Then the randomized family, >= 20 instances with torsion H1.
    int tested = 0, attempts = 0;
    while (tested < 20 && attempts < 400) {
      ++attempts;
      RandomInstance inst = random_instance();
      require(validate(inst.pres, inst.eps, inst.rho).ok(),
              "random instance failed validation");
      auto c = assemble_complex(inst.pres, inst.eps, inst.rho);
      auto h = homology_orders(c);
      if (!h.h1_torsion() || h.delta0.is_zero()) continue;
      auto w = wada_invariant(inst.pres, inst.eps, inst.rho, &c);
      require(w.value == LaurentFraction::of(h.delta1, h.delta0),
              "random instance: wada != Delta1/Delta0");
      ++tested;
    }
    require(tested >= 20, "fewer than 20 torsion instances generated");
  });
  require(secs < 30.0, "oracle suite exceeded 30 s");
}

// ---- criterion 5: divisibility harness ---------------------------------

void criterion_divisibility() {
  for (const char* name : {"two_lines.json", "cuspidal_cubic.json"}) {
    auto doc = fixture_doc(name);
    auto rep = corollary_check(*doc.curve, doc.pres);
    require(rep.classical.residual.is_one_up_to_units(),
            std::string(name) + ": corollary residual != 1");
    require(rep.classical.divisible == Verdict::yes,
            std::string(name) + ": divisible flag not set");
    require(rep.consistent_with_theorem,
            std::string(name) + ": theorem and corollary residuals differ");
  }
}

// ---- criterion 6: property suite ----------------------------------------

void criterion_properties() {
  // Fox fundamental identity on random words.
  for (int trial = 0; trial < 50; ++trial) {
    const Word w = testutil::rand_word(3, 12);
    GroupRingElement total;
    for (int j = 1; j <= 3; ++j)
      for (const auto& [prefix, c] : fox_derivative(w, j).terms) {
        total.add(prefix * Word::generator(j), c);
        total.add(prefix, -c);
      }
    GroupRingElement expected;
    expected.add(w, 1);
    expected.add(Word(), -1);
    require(total == expected, "fox fundamental identity failed");
  }

  // d1 o d2 = 0 on every assembled complex, and Delta0 != 0 for valid
  // (hence surjective) eps.
  const std::vector<std::string> fixtures = {
      "zariski_pair_curve1.json", "zariski_pair_curve2.json", "nodal_degeneration.json",
      "trefoil_closure.json", "hopf_closure.json", "two_lines.json",
      "cuspidal_cubic.json"};
  for (const auto& name : fixtures) {
    auto doc = fixture_doc(name);
    auto c = assemble_complex(doc.pres, doc.eps, doc.rho);
    if (c.d2.rows() > 0)
      require((c.d2 * c.d1).is_zero(), name + ": d2 * d1 != 0");
    auto h = homology_orders(c);
    require(!h.delta0.is_zero(), name + ": Delta0 = 0 with nontrivial eps");
  }
  for (int trial = 0; trial < 10; ++trial) {
    RandomInstance inst = random_instance();
    auto c = assemble_complex(inst.pres, inst.eps, inst.rho);
    if (c.d2.rows() > 0)
      require((c.d2 * c.d1).is_zero(), "random: d2 * d1 != 0");
    auto h = homology_orders(c);
    require(!h.delta0.is_zero(), "random: Delta0 = 0 with nontrivial eps");
  }

  // Direct-sum multiplicativity on rank-1 pairs over the trefoil closure.
  {
    BraidWord b;
    b.strands = 2;
    b.letters = {1, 1, 1};
    auto pres = closure_presentation(b);
    Epsilon eps = Epsilon::all_ones(2);
    for (auto [k1, k2] : std::vector<std::pair<int, int>>{
             {0, 1}, {1, 2}, {2, 5}, {3, 4}}) {
      auto r1 = Representation::rank1({CycloNumber::zeta_power(6, k1),
                                       CycloNumber::zeta_power(6, k1)});
      auto r2 = Representation::rank1({CycloNumber::zeta_power(6, k2),
                                       CycloNumber::zeta_power(6, k2)});
      auto tau_of = [&](const Representation& r) {
        auto t = torsion(homology_orders(assemble_complex(pres, eps, r)));
        require(t.defined, "torsion undefined on a rank-1 trefoil twist");
        return t.value;
      };
      require(tau_of(direct_sum(r1, r2)) == tau_of(r1) * tau_of(r2),
              "direct-sum torsion multiplicativity failed");
    }
  }

  // Classical conjugation symmetry on the link fixtures.
  for (const char* name : {"trefoil_closure.json", "hopf_closure.json"}) {
    auto doc = fixture_doc(name);
    auto h = homology_orders(assemble_complex(doc.pres, doc.eps, doc.rho));
    require(eq_up_to_units(h.delta1, conj_poly(h.delta1)),
            std::string(name) + ": Delta1 not conjugation symmetric");
  }

  // Wada generator-choice independence (the --cross-check path).
  for (const auto& name : fixtures) {
    auto doc = fixture_doc(name);
    wada_invariant(doc.pres, doc.eps, doc.rho, nullptr, true);
  }
}

// ---- criterion 7: characteristic-variety scan ---------------------------

void criterion_scan() {
  auto doc = fixture_doc("zariski_pair_curve2.json");
  auto scan = cv_scan(doc.pres, 2);
  require(scan.rows.size() == 4, "expected 4 characters for N=2, r=2");
  const auto& row = scan.rows[1];
  require(row.exponents == std::vector<int>{0, 1},
          "character order is not deterministic");
  require(eq_up_to_units(row.delta1, qpoly({{1, 1}, {1, 0}}, 2)),
          "character (1,-1): Delta1 != t+1");
  require(!row.member, "character (1,-1) wrongly reported in V1");

  // Trivial character reproduces the classical verdict.
  auto classical = homology_orders(assemble_complex(
      doc.pres, Epsilon::all_ones(2), Representation::trivial(2)));
  require(eq_up_to_units(scan.rows[0].delta1,
                         promote_poly(classical.delta1, 2)),
          "trivial character does not match the classical Delta1");
  const LaurentPoly t_minus_one_c = qpoly({{1, 1}, {-1, 0}});
  const bool classical_member =
      classical.delta1.is_zero() || t_minus_one_c.divides(classical.delta1);
  require(scan.rows[0].member == classical_member,
          "trivial character verdict differs from the classical one");

  // Deterministic report bytes across runs.
  require(scan_report_text(scan) == scan_report_text(cv_scan(doc.pres, 2)),
          "scan report bytes differ across runs");
}

struct Criterion {
  std::string name;
  std::function<void()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1 Zariski pair: twisted invariants 1 vs t+1, classical blind",
       criterion_zariski_pair},
      {"2 nodal degeneration: displayed twist validates, Delta = t+1",
       criterion_nodal_degeneration},
      {"3 link sanity: trefoil and hopf closures", criterion_link_sanity},
      {"4 Wada vs SNF oracle equivalence, fixtures + 20 random",
       criterion_wada_oracle},
      {"5 divisibility harness: two lines and cuspidal cubic",
       criterion_divisibility},
      {"6 property suite: fox, d2d1, Delta0, direct sum, conj, cross-check",
       criterion_properties},
      {"7 characteristic-variety scan on curve 2", criterion_scan},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    try {
      const double secs = run_timed(c.run);
      std::ostringstream line;
      line << "PASS  " << c.name << " (" << secs << " s)";
      std::cout << line.str() << "\n";
    } catch (const Failure& f) {
      std::cout << "FAIL  " << c.name << ": " << f.what << "\n";
      ++failures;
    } catch (const std::exception& e) {
      std::cout << "FAIL  " << c.name << ": unexpected error: " << e.what()
                << "\n";
      ++failures;
    }
  }
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
