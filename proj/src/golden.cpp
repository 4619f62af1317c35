#include "golden.hpp"

#include <numbers>
#include <sstream>

#include "duality.hpp"
#include "gcd_graph.hpp"
#include "oracle.hpp"
#include "pst_engine.hpp"

namespace gcdpst {

namespace {

struct TableCase {
  const char* name;
  const char* ring;
  const char* divisors;
  std::vector<std::pair<std::int64_t, std::vector<const char*>>> groups;
  std::vector<std::pair<std::int64_t, std::size_t>> roots;
};

const TableCase kTableCases[] = {
    {"D = {R, Rxy}",
     "F2[x,y]/(x^2,y^2)",
     "R, x*y",
     {{9, {"0"}},
      {-1, {"1", "x*y + x + 1", "x*y + x + y + 1", "x + y + 1", "x + 1", "x*y + 1", "x*y + y + 1", "y + 1"}},
      {1, {"x*y + x + y", "x*y + x", "x + y", "x", "x*y + y", "y"}},
      {-7, {"x*y"}}},
     {{9, 1}, {-7, 1}, {1, 6}, {-1, 8}}},
    {"D = {R, Rx, Rxy}",
     "F2[x,y]/(x^2,y^2)",
     "R, x, x*y",
     {{11, {"0"}},
      {-1,
       {"1", "x*y + x + y", "x*y + x + 1", "x*y + x + y + 1", "x + y", "x + y + 1", "x + 1", "x*y + y",
        "x*y + 1", "x*y + y + 1", "y", "y + 1"}},
      {3, {"x*y + x", "x"}},
      {-5, {"x*y"}}},
     {{11, 1}, {-5, 1}, {3, 2}, {-1, 12}}},
};

struct ChainCase {
  const char* ring;
  const char* alpha;
  unsigned length;  // alpha^length = 0, alpha^(length-1) != 0
};

const ChainCase kChainCases[] = {{"Z8", "2", 3}, {"Z16", "2", 4}, {"F2[x]/(x^3)", "x", 3}};

struct UnitaryCase {
  const char* ring;
  bool expected;
};

const UnitaryCase kUnitaryCases[] = {{"Z4", true}, {"GF(4)", false}, {"Z4 x GF(4)", true}};

Spectrum spectrum_with(const GcdGraph& G, const ArithmeticConventions& conventions) {
  return spectrum_closed_form(G, RamanujanTable(G.ring(), conventions));
}

template <class F>
void run(GoldenReport& report, std::string name, F&& body) {
  GoldenCheck check{std::move(name), false, ""};
  try {
    check.passed = body(check.detail);
  } catch (const std::exception& e) {
    check.detail = std::string("error: ") + e.what();
  }
  report.checks.push_back(std::move(check));
}

std::string show(const CharPoly& p) { return p.to_string(); }

}  // namespace

bool GoldenReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

GoldenReport run_golden_suite(const ArithmeticConventions& conventions) {
  GoldenReport report;

  for (const auto& tc : kTableCases) {
    RingPtr R = build_ring(tc.ring);
    GcdGraph G(R, make_divisor_set(*R, std::string_view(tc.divisors)));
    Functional psi = build_psi(*R);
    const std::string label = std::string(tc.ring) + ", " + tc.name;

    run(report, "spectrum table " + label, [&](std::string& detail) {
      Spectrum spec = spectrum_with(G, conventions);
      std::vector<bool> seen(R->order(), false);
      std::size_t covered = 0;
      for (const auto& [lambda, elems] : tc.groups) {
        for (const char* text : elems) {
          Element r = R->parse_element(text);
          if (seen[r]) {
            detail = std::string(text) + " listed twice";
            return false;
          }
          seen[r] = true;
          ++covered;
          if (spec[r] != lambda) {
            detail = "lambda(" + std::string(text) + ") = " + std::to_string(spec[r]) + ", expected " +
                     std::to_string(lambda);
            return false;
          }
        }
      }
      if (covered != R->order()) {
        detail = "table covers " + std::to_string(covered) + " of " + std::to_string(R->order()) + " elements";
        return false;
      }
      detail = factored_char_poly(spec);
      return true;
    });

    run(report, "spectrum routes agree " + label, [&](std::string& detail) {
      bool ok = spectrum_with(G, conventions) == spectrum_character_sum(G, psi);
      detail = ok ? "closed form = character sum" : "closed form differs from character sum";
      return ok;
    });

    run(report, "characteristic polynomial " + label, [&](std::string& detail) {
      CharPoly expected = expand_factored(tc.roots);
      CharPoly from_spectrum = char_poly(spectrum_with(G, conventions));
      CharPoly from_matrix = char_poly_exact(G);
      detail = show(expected);
      if (from_spectrum != expected) {
        detail = "from spectrum: " + show(from_spectrum);
        return false;
      }
      if (from_matrix != expected) {
        detail = "from adjacency matrix: " + show(from_matrix);
        return false;
      }
      return true;
    });
  }

  {
    RingPtr R = build_ring("F2[x,y]/(x^2,y^2)");
    Functional psi = build_psi(*R);
    const Element xy = R->parse_element("x*y");

    run(report, "transfer 0 -> x*y at pi/2, D = {R, Rxy}", [&](std::string& detail) {
      GcdGraph G(R, make_divisor_set(*R, std::string_view("R, x*y")));
      Spectrum spec = spectrum_with(G, conventions);
      PstVerdict v = has_pst(G, spec, psi);
      if (!v.exists) {
        detail = "solver reports no transfer";
        return false;
      }
      double modulus = std::abs(walk_amplitude(*R, spec, psi, xy, std::numbers::pi / 2));
      std::ostringstream os;
      os << "target " << R->format(v.target) << ", tau " << v.time << ", |F(pi/2)| = " << modulus;
      detail = os.str();
      return v.target == xy && v.minimal && v.time == Rational(1, 4) && modulus >= 1 - 1e-9;
    });

    run(report, "no transfer, D = {R, Rx, Rxy}", [&](std::string& detail) {
      GcdGraph G(R, make_divisor_set(*R, std::string_view("R, x, x*y")));
      Spectrum spec = spectrum_with(G, conventions);
      PstVerdict v = has_pst(G, spec, psi);
      if (v.exists) {
        detail = "solver reports transfer to " + R->format(v.target);
        return false;
      }
      const Witness& w = *v.witness;
      bool in_m = w.r2 != 0 && !R->is_unit(w.r2);
      bool ok = w.kind == WitnessKind::EqualEigenvalue && in_m && spec[w.r2] == spec[R->one()];
      double peak = max_modulus(amplitude_sweep(*R, spec, psi, xy, std::numbers::pi / 1024, 4096));
      std::ostringstream os;
      os << "witness " << R->format(w.r1) << " / " << R->format(w.r2) << " (lambda " << spec[w.r2]
         << "), sweep max " << peak;
      detail = os.str();
      return ok && peak < 1 - 1e-3;
    });
  }

  for (const auto& cc : kChainCases) {
    run(report, std::string("chain ring classification ") + cc.ring, [&](std::string& detail) {
      RingPtr R = build_ring(cc.ring);
      Functional psi = build_psi(*R);
      RamanujanTable table(*R, conventions);
      Element alpha = R->parse_element(cc.alpha);
      Ideal top = principal_ideal(*R, R->pow(alpha, cc.length - 1));
      Ideal second = principal_ideal(*R, R->pow(alpha, cc.length - 2));
      std::vector<Ideal> ideals = nonzero_principal_ideals(*R);
      std::size_t sets = 0, mismatches = 0;
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << ideals.size()); ++mask) {
        std::vector<Ideal> chosen;
        for (std::size_t i = 0; i < ideals.size(); ++i)
          if (mask >> i & 1) chosen.push_back(ideals[i]);
        GcdGraph G(R, make_divisor_set(*R, chosen));
        std::size_t hits = 0;
        for (const Ideal& I : G.divisors().ideals) hits += (I == top) + (I == second);
        bool verdict = has_pst(G, spectrum_closed_form(G, table), psi).exists;
        mismatches += verdict != (hits == 1);
        ++sets;
      }
      detail = std::to_string(sets) + " divisor sets, " + std::to_string(mismatches) + " mismatches";
      return mismatches == 0;
    });
  }

  for (const auto& uc : kUnitaryCases) {
    run(report, std::string("unitary graph ") + uc.ring, [&](std::string& detail) {
      RingPtr R = build_ring(uc.ring);
      UnitaryClassification c = classify_unitary(*R);
      GcdGraph G = unitary_graph(R);
      Functional psi = build_psi(*R);
      PstVerdict v = has_pst(G, spectrum_with(G, conventions), psi);
      detail = (c.pst ? "transfer: " : "no transfer: ") + c.explanation;
      if (v.exists) detail += "; solver target " + R->format(v.target);
      bool agree = c.pst == v.exists && (!v.exists || c.target == v.target);
      return c.pst == uc.expected && agree;
    });
  }

  return report;
}

nlohmann::json to_json(const GoldenReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"passed", report.all_passed()}, {"checks", checks}};
}

std::string to_text(const GoldenReport& report) {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto& c : report.checks) {
    os << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  [" << c.detail << "]\n";
    failed += !c.passed;
  }
  os << report.checks.size() - failed << "/" << report.checks.size() << " checks passed\n";
  return os.str();
}

}  // namespace gcdpst
