// Acceptance run: one PASS/FAIL line per criterion, with timings.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace gcdpst;
using namespace testing_support;

namespace {

constexpr double kUnitTol = 1e-9;     // |F| within this of 1 counts as transfer
constexpr double kSweepGap = 1e-3;    // sweep maximum must stay this far below 1
constexpr double kSweepStep = std::numbers::pi / 1024;
constexpr std::size_t kSweepSteps = 4096;

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

// Every Pst verdict produced in criteria 3-6, rechecked in criterion 10.
struct Recorded {
  RingPtr ring;
  DivisorSet divisors;
  PstVerdict verdict;
};
std::vector<Recorded> g_verdicts;

void record(const GcdGraph& G, const PstVerdict& v) {
  if (v.exists) g_verdicts.push_back({G.ring_ptr(), G.divisors(), v});
}

std::vector<BigInt> poly_from_roots(const std::vector<std::pair<std::int64_t, int>>& roots) {
  std::vector<BigInt> p{1};
  for (auto [root, mult] : roots) {
    for (int k = 0; k < mult; ++k) {
      std::vector<BigInt> q(p.size() + 1, 0);
      for (std::size_t i = 0; i < p.size(); ++i) {
        q[i + 1] += p[i];
        q[i] -= p[i] * root;
      }
      p = std::move(q);
    }
  }
  return p;
}

struct Table {
  const char* divisors;
  std::vector<std::pair<std::int64_t, std::vector<const char*>>> groups;
  std::vector<std::pair<std::int64_t, int>> roots;
};

Outcome check_table(const Table& table) {
  Outcome out;
  RingPtr R = build_ring("F2[x,y]/(x^2,y^2)");
  GcdGraph G(R, make_divisor_set(*R, std::string_view(table.divisors)));
  const Functional psi = build_psi(*R);
  const Spectrum spec = compute_spectrum(G, psi);
  std::size_t covered = 0;
  for (const auto& [lambda, elements] : table.groups) {
    for (const char* text : elements) {
      ++covered;
      const Element r = R->parse_element(text);
      if (spec[r] != lambda)
        out.fail(std::string("lambda_") + text + " = " + std::to_string(spec[r]) + ", expected " + std::to_string(lambda));
    }
  }
  if (covered != R->order()) out.fail("table does not cover the ring");
  const CharPoly p = char_poly(spec);
  if (p.coefficients != poly_from_roots(table.roots)) out.fail("characteristic polynomial differs: " + p.to_string());
  if (out.pass) out.detail = p.to_string();
  return out;
}

Outcome criterion1() {
  return check_table({"R, x*y",
                      {{9, {"0"}},
                       {-1, {"1", "x*y + x + 1", "x*y + x + y + 1", "x + y + 1", "x + 1", "x*y + 1", "x*y + y + 1", "y + 1"}},
                       {1, {"x*y + x + y", "x*y + x", "x + y", "x", "x*y + y", "y"}},
                       {-7, {"x*y"}}},
                      {{9, 1}, {-7, 1}, {1, 6}, {-1, 8}}});
}

Outcome criterion2() {
  return check_table({"R, x, x*y",
                      {{11, {"0"}},
                       {-1, {"1", "x*y + x + y", "x*y + x + 1", "x*y + x + y + 1", "x + y", "x + y + 1", "x + 1",
                             "x*y + y", "x*y + 1", "x*y + y + 1", "y", "y + 1"}},
                       {3, {"x*y + x", "x"}},
                       {-5, {"x*y"}}},
                      {{11, 1}, {-5, 1}, {3, 2}, {-1, 12}}});
}

Outcome criterion3() {
  Outcome out;
  RingPtr R = build_ring("F2[x,y]/(x^2,y^2)");
  const Functional psi = build_psi(*R);
  const Element xy = R->parse_element("x*y");
  const Subset m = jacobson_radical(*R).members;

  GcdGraph g5(R, make_divisor_set(*R, std::string_view("R, x*y")));
  const Spectrum s5 = compute_spectrum(g5, psi);
  const PstVerdict v5 = has_pst(g5, s5, psi);
  record(g5, v5);
  if (!v5.exists || v5.target != xy) out.fail("{R, Rxy}: expected transfer to x*y");
  else if (!v5.minimal || v5.time != Rational(1, 4)) out.fail("{R, Rxy}: minimal time is not 1/4 of 2*pi");
  const double mod5 = std::abs(walk_amplitude(*R, s5, psi, xy, std::numbers::pi / 2));
  if (std::abs(mod5 - 1) > kUnitTol) out.fail("{R, Rxy}: |F(pi/2)| = " + std::to_string(mod5));

  GcdGraph g6(R, make_divisor_set(*R, std::string_view("R, x, x*y")));
  const Spectrum s6 = compute_spectrum(g6, psi);
  const PstVerdict v6 = has_pst(g6, s6, psi);
  if (v6.exists) out.fail("{R, Rx, Rxy}: unexpected transfer");
  const PstVerdict w6 = solve_pst(g6, xy, s6, psi);
  if (w6.exists || !w6.witness) {
    out.fail("{R, Rx, Rxy}: no witness for x*y");
  } else {
    const Witness& w = *w6.witness;
    const Element r = m.contains(w.r2) ? w.r2 : w.r1;
    if (!m.contains(r) || s6[r] != s6[R->one()]) out.fail("{R, Rx, Rxy}: witness is not an element of m with lambda_1");
  }
  const double sweep = max_modulus(amplitude_sweep(*R, s6, psi, xy, kSweepStep, kSweepSteps));
  if (sweep >= 1 - kSweepGap) out.fail("{R, Rx, Rxy}: sweep maximum " + std::to_string(sweep));

  std::ostringstream d;
  d << "|F(pi/2)| - 1 = " << std::abs(mod5 - 1) << ", sweep max = " << sweep;
  if (out.pass) out.detail = d.str();
  return out;
}

Outcome criterion4() {
  Outcome out;
  const std::vector<std::string> rings = {"F2", "Z4", "Z8", "Z16", "F2[x]/(x^2)", "F2[x]/(x^3)", "F2[x]/(x^4)",
                                          "F2[x,y]/(x^2,y^2)", "Z4[x]/(x^2)", "Z4[x]/(x^2-2)"};
  std::size_t sets = 0, odd = 0;
  for (const auto& text : rings) {
    RingPtr R = build_ring(text);
    const Functional psi = build_psi(*R);
    const RamanujanTable table(*R);
    const Element e = minimal_element(*R);
    const auto isoc = isoc2(*R);
    for (const DivisorSet& D : all_divisor_sets(*R, 4)) {
      ++sets;
      if (isoc2_parity_count(D, isoc) % 2 == 0) continue;
      ++odd;
      GcdGraph G(R, D);
      const Spectrum spec = compute_spectrum(G, psi, table);
      const PstVerdict v = has_pst(G, spec, psi);
      record(G, v);
      if (!v.exists || v.target != e || !in_time_set(v, Rational(1, 4))) {
        out.fail(text + ": odd parity without transfer to e at pi/2");
        continue;
      }
      const double mod = std::abs(walk_amplitude(*R, spec, psi, e, std::numbers::pi / 2));
      if (std::abs(mod - 1) > kUnitTol) out.fail(text + ": oracle modulus " + std::to_string(mod));
    }
  }
  if (out.pass) out.detail = std::to_string(sets) + " divisor sets, " + std::to_string(odd) + " with odd parity";
  return out;
}

Outcome criterion5() {
  Outcome out;
  std::size_t sets = 0;
  for (unsigned k = 1; k <= 6; ++k) {
    const std::string z = "Z" + std::to_string(1u << k);
    const std::string f = k == 1 ? "F2" : "F2[x]/(x^" + std::to_string(k) + ")";
    for (const auto& [text, alpha_text] : {std::pair{z == "Z2" ? std::string("F2") : z, std::string("2")},
                                           std::pair{f, std::string("x")}}) {
      if (k == 1 && alpha_text == "x") continue;  // F2 appears once
      RingPtr R = build_ring(text);
      const Element alpha = k == 1 ? 0 : R->parse_element(alpha_text);
      // Rα^{k-1} and Rα^{k-2}; for k = 1 only Rα^0 = R exists.
      std::vector<Ideal> special{principal_ideal(*R, R->pow(alpha, k - 1))};
      if (k >= 2) special.push_back(principal_ideal(*R, R->pow(alpha, k - 2)));
      const Functional psi = build_psi(*R);
      const RamanujanTable table(*R);
      for (const DivisorSet& D : all_divisor_sets(*R, 64)) {
        ++sets;
        std::size_t hits = 0;
        for (const Ideal& I : special) hits += static_cast<std::size_t>(std::count(D.ideals.begin(), D.ideals.end(), I));
        GcdGraph G(R, D);
        const PstVerdict v = has_pst(G, compute_spectrum(G, psi, table), psi);
        record(G, v);
        if (v.exists != (hits == 1)) out.fail(text + ": verdict differs from the two-ideal predicate");
      }
    }
  }
  if (out.pass) out.detail = std::to_string(sets) + " divisor sets, zero mismatches";
  return out;
}

// Vertices reachable from 0 in the unitary graph.
std::vector<Element> component_of_zero(const GcdGraph& G) {
  const Ring& R = G.ring();
  std::vector<bool> seen(R.order(), false);
  std::vector<Element> order{0};
  seen[0] = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Element s : G.generating_set().elements())
      if (Element b = R.add(order[i], s); !seen[b]) {
        seen[b] = true;
        order.push_back(b);
      }
  std::sort(order.begin(), order.end());
  return order;
}

Outcome criterion6() {
  Outcome out;
  const std::vector<std::string> factors = {"F2", "Z4", "F2[x]/(x^2)", "GF(4)", "GF(8)", "GF(9)", "F3", "F5", "Z8",
                                            "F2[x,y]/(x^2,y^2)"};
  std::vector<std::string> rings;
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i; j < factors.size(); ++j) {
      rings.push_back(factors[i] + " x " + factors[j]);
      for (std::size_t k = j; k < factors.size(); ++k) rings.push_back(factors[i] + " x " + factors[j] + " x " + factors[k]);
    }
  std::size_t tested = 0, with_pst = 0;
  for (const auto& text : rings) {
    RingPtr R;
    try {
      R = build_ring(text, RingOptions{512});
    } catch (const ResourceCapError&) {
      continue;
    }
    ++tested;
    GcdGraph G(R, make_divisor_set(*R, std::string_view("R")));
    const Functional psi = build_psi(*R);
    const Spectrum spec = compute_spectrum(G, psi);
    const UnitaryClassification c = classify_unitary(*R);
    const PstVerdict v = has_pst(G, spec, psi);
    record(G, v);
    // Amplitudes between different components vanish, so transfer from 0 is
    // decided inside its component; the dense check below runs on that component alone.
    const std::vector<Element> comp = component_of_zero(G);
    if (c.pst != v.exists) out.fail(text + ": classification and solver disagree");
    if (v.exists) {
      ++with_pst;
      if (!std::binary_search(comp.begin(), comp.end(), v.target)) out.fail(text + ": target outside the component");
      Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(comp.size()), static_cast<Eigen::Index>(comp.size()));
      for (std::size_t i = 0; i < comp.size(); ++i)
        for (std::size_t j = 0; j < comp.size(); ++j)
          if (G.adjacent(comp[i], comp[j])) A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
      const auto t = 2 * std::numbers::pi * static_cast<double>(v.time);
      const auto idx = static_cast<Eigen::Index>(std::lower_bound(comp.begin(), comp.end(), v.target) - comp.begin());
      std::complex<double> amp = 0;
      for (Eigen::Index k = 0; k < A.rows(); ++k)
        amp += std::exp(std::complex<double>(0, es.eigenvalues()[k] * t)) * es.eigenvectors()(0, k) * es.eigenvectors()(idx, k);
      if (std::abs(std::abs(amp) - 1) > kUnitTol) out.fail(text + ": component walk modulus " + std::to_string(std::abs(amp)));
    }
  }
  if (tested < 30) out.fail("only " + std::to_string(tested) + " product rings");
  if (out.pass) out.detail = std::to_string(tested) + " product rings, " + std::to_string(with_pst) + " with transfer";
  return out;
}

Subset square_of(const Ring& R, const Subset& I) {
  std::vector<Element> gens;
  for (Element a : I.elements())
    for (Element b : I.elements()) gens.push_back(R.mul(a, b));
  return additive_closure(R, gens);
}

Outcome criterion7() {
  Outcome out;
  std::size_t checked = 0;
  for (const auto& text : local_f2_catalog()) {
    RingPtr R = build_ring(text);
    const Element e = minimal_element(*R);
    const Subset m = jacobson_radical(*R).members;
    const Subset Re = principal_ideal_set(*R, e);
    const Subset ann_m2 = annihilator_of_set(*R, square_of(*R, m));
    const Subset soc2 = socle_level(*R, 2);
    const auto principal = nonzero_principal_ideals(*R);
    for (Element a = 0; a < R->order(); ++a) {
      if (a == e) continue;
      ++checked;
      const Subset Ra = principal_ideal_set(*R, a);
      bool c1 = Re.is_subset_of(Ra) && !(Re == Ra);
      for (const Ideal& J : principal) {
        if (!c1) break;
        if (Re.is_subset_of(J.members) && !(Re == J.members) && J.members.is_subset_of(Ra) && !(J.members == Ra)) c1 = false;
      }
      bool c2 = true;
      for (Element x : m.elements()) c2 = c2 && Re.contains(R->mul(x, a));
      const bool c3 = ann_m2.contains(a);
      const bool c4 = soc2.contains(a);
      const bool c5 = R->order() / annihilator_set(*R, a).size() == 4;
      // a = 0 satisfies (2)-(4) but not (1) or (5); the statement concerns a with Ra containing Re.
      if (a == 0) {
        if (c1 || c5 || !c2 || !c3 || !c4) out.fail(text + ": unexpected behaviour at 0");
        continue;
      }
      if (c1 != c2 || c2 != c3 || c3 != c4 || c4 != c5) out.fail(text + ": conditions disagree at " + R->format(a));
    }
  }
  if (out.pass) out.detail = std::to_string(checked) + " elements";
  return out;
}

Outcome criterion8() {
  Outcome out;
  std::size_t graphs = 0;
  for (const auto& text : local_f2_catalog()) {
    RingPtr R = build_ring(text);
    const Functional psi = build_psi(*R);
    const RamanujanTable table(*R);
    const Subset m = jacobson_radical(*R).members;
    for (const DivisorSet& D : all_divisor_sets(*R, 3)) {
      ++graphs;
      GcdGraph G(R, D);
      const Spectrum spec = spectrum_closed_form(G, table);
      const std::int64_t base = spec[0];
      for (Element a : m.elements())
        if ((spec[a] - base) % 4 != 0) out.fail(text + ": lambda_" + R->format(a) + " not congruent to lambda_0 mod 4");
    }
  }
  if (out.pass) out.detail = std::to_string(graphs) + " graphs";
  return out;
}

Outcome criterion9() {
  Outcome out;
  std::size_t rings = 0, graphs = 0, polys = 0;
  for (const auto& text : full_catalog()) {
    ++rings;
    RingPtr R = build_ring(text);
    const Functional psi = build_psi(*R);
    if (!is_nondegenerate(psi, *R)) out.fail(text + ": psi degenerate");
    for (const Ideal& I : nonzero_principal_ideals(*R))
      if (!(annihilator_of_ideal(*R, annihilator_of_ideal(*R, I)) == I)) out.fail(text + ": Ann(Ann(I)) != I");

    // Unit differences, closed by brute force, against the factor-wise description.
    std::vector<Element> diffs;
    for (Element u : R->units())
      for (Element v : R->units()) diffs.push_back(R->sub(u, v));
    const Subset brute = additive_closure(*R, diffs);
    const Ideal J = jacobson_radical(*R);
    const LocalFactorization lf = local_decomposition(*R);
    std::vector<Element> expected;
    for (Element a = 0; a < R->order(); ++a) {
      bool in = true;
      for (const auto& f : lf.factors)
        if (f.residue_is_f2 && !J.contains(R->mul(f.idempotent, a))) in = false;
      if (in) expected.push_back(a);
    }
    if (brute.elements() != expected || !(delta_prime(*R) == brute)) out.fail(text + ": unit-difference group mismatch");

    const bool local_f2 = lf.factors.size() == 1 && lf.factors[0].residue_is_f2;
    if (local_f2) {
      const Element e = minimal_element(*R);
      if (2 * psi(e) != psi.modulus()) out.fail(text + ": psi(e)/n != 1/2");
      if (R->order() > 2 && isoc2(*R).size() % 2 != 0) out.fail(text + ": odd |Isoc^2|");
    }

    const RamanujanTable table(*R);
    const std::size_t max_size = R->order() > 128 ? 1 : 2;
    for (const DivisorSet& D : all_divisor_sets(*R, max_size)) {
      ++graphs;
      GcdGraph G(R, D);
      const Spectrum closed = spectrum_closed_form(G, table);
      if (!(closed == spectrum_character_sum(G, psi))) out.fail(text + ": spectrum routes disagree");
      if (R->order() <= 64) {
        ++polys;
        if (!(char_poly(closed) == char_poly_exact(G))) out.fail(text + ": characteristic polynomial mismatch");
      }
    }
  }
  if (out.pass)
    out.detail = std::to_string(rings) + " rings, " + std::to_string(graphs) + " graphs, " + std::to_string(polys) +
                 " exact polynomials";
  return out;
}

Outcome criterion10() {
  Outcome out;
  for (const Recorded& rec : g_verdicts) {
    const Ring& R = *rec.ring;
    GcdGraph G(rec.ring, rec.divisors);
    const Functional psi = build_psi(R);
    const Spectrum spec = compute_spectrum(G, psi);
    const PstVerdict& v = rec.verdict;
    const std::string where = R.description();
    // Exactly one s at the reported time, by direct evaluation of every pair (r, 0).
    std::size_t partners = 0;
    for (Element s = 0; s < R.order(); ++s) {
      bool ok = true;
      for (Element r = 0; r < R.order() && ok; ++r) {
        const Rational val = Rational(spec[r] - spec[0]) * v.time +
                             Rational(static_cast<std::int64_t>(psi(R.mul(s, r))), static_cast<std::int64_t>(psi.modulus()));
        ok = denominator(val) == 1;
      }
      if (ok) ++partners;
    }
    if (partners != 1) out.fail(where + ": " + std::to_string(partners) + " partners at the reported time");
    const Subset delta = delta_full(spec, R);
    for (Element d : delta.elements())
      if (psi(R.mul(v.target, d)) != 0) out.fail(where + ": target not orthogonal to the equal-eigenvalue group");
  }
  if (g_verdicts.empty()) out.fail("no verdicts recorded");
  if (out.pass) out.detail = std::to_string(g_verdicts.size()) + " transfer verdicts";
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
    double budget;  // seconds; 0 = none
  };
  const Criterion criteria[] = {
      {"spectrum table, D = {R, Rxy}", criterion1, 1},
      {"spectrum table, D = {R, Rx, Rxy}", criterion2, 1},
      {"transfer verdicts with oracle", criterion3, 0},
      {"odd parity implies transfer to e", criterion4, 120},
      {"chain-ring classification", criterion5, 0},
      {"unitary classification vs solver", criterion6, 300},
      {"socle-2 equivalences", criterion7, 0},
      {"eigenvalues on m agree mod 4", criterion8, 0},
      {"structural invariants", criterion9, 0},
      {"uniqueness and orthogonality of targets", criterion10, 0},
  };
  std::printf("tolerances: |F| unit %.0e, sweep gap %.0e, sweep grid pi/1024 x %zu\n", kUnitTol, kSweepGap, kSweepSteps);
  int failures = 0;
  for (std::size_t i = 0; i < std::size(criteria); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].budget > 0 && secs > criteria[i].budget)
      o.fail("over the " + std::to_string(static_cast<int>(criteria[i].budget)) + "s budget");
    if (!o.pass) ++failures;
    std::printf("%s  %2zu  %-40s %8.3fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
