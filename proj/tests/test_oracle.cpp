#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "error.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace gcdpst;
using namespace testing_support;

namespace {

constexpr double pi = std::numbers::pi;

struct Fixture {
  RingPtr R;
  GcdGraph G;
  Functional psi;
  Spectrum spec;
  Fixture(const std::string& ring, const std::string& divisors)
      : R(build_ring(ring)),
        G(R, make_divisor_set(*R, std::string_view(divisors))),
        psi(build_psi(*R)),
        spec(compute_spectrum(G, psi)) {}
  Element at(const char* text) const { return R->parse_element(text); }
};

}  // namespace

TEST_CASE("walk amplitudes") {
  Fixture f5("F2[x,y]/(x^2,y^2)", "R, x*y");
  CHECK(std::abs(std::abs(walk_amplitude(*f5.R, f5.spec, f5.psi, f5.at("x*y"), pi / 2)) - 1) < 1e-9);
  CHECK(std::abs(std::abs(walk_amplitude(*f5.R, f5.spec, f5.psi, 0, 0)) - 1) < 1e-12);
  CHECK(std::abs(walk_amplitude(*f5.R, f5.spec, f5.psi, f5.at("x*y"), pi / 4)) < 1 - 1e-3);

  Fixture f6("F2[x,y]/(x^2,y^2)", "R, x, x*y");
  auto sweep = amplitude_sweep(*f6.R, f6.spec, f6.psi, f6.at("x*y"), pi / 1024, 4096);
  CHECK(sweep.size() == 4097);
  CHECK(max_modulus(sweep) < 1 - 1e-3);
  CHECK(sweep[0].t == 0);
  CHECK(std::abs(sweep[4096].t - 4 * pi) < 1e-12);
}

TEST_CASE("spectral amplitude equals the matrix exponential") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> time(0, 20);
  for (const char* text : {"F2[x,y]/(x^2,y^2)", "Z4 x F3", "Z8", "GF(4) x F2"}) {
    RingPtr R = build_ring(text);
    Functional psi = build_psi(*R);
    for (const DivisorSet& D : all_divisor_sets(*R, 2)) {
      GcdGraph G(R, D);
      Spectrum spec = compute_spectrum(G, psi);
      MatrixWalk walk(G);
      for (int i = 0; i < 20; ++i) {
        const Element s = static_cast<Element>(rng() % R->order());
        const double t = time(rng);
        REQUIRE(std::abs(walk_amplitude(*R, spec, psi, s, t) - walk.amplitude(s, t)) < 1e-9);
      }
    }
  }
}

TEST_CASE("amplitudes never exceed one") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> time(0, 100);
  for (const auto& text : full_catalog()) {
    CAPTURE(text);
    RingPtr R = build_ring(text);
    Functional psi = build_psi(*R);
    for (const DivisorSet& D : all_divisor_sets(*R, 1)) {
      GcdGraph G(R, D);
      Spectrum spec = compute_spectrum(G, psi);
      for (int i = 0; i < 1000; ++i) {
        const Element s = static_cast<Element>(rng() % R->order());
        REQUIRE(std::abs(walk_amplitude(*R, spec, psi, s, time(rng))) <= 1 + 1e-9);
      }
    }
  }
}

TEST_CASE("sweep CSV") {
  Fixture f("Z4", "R");
  std::string csv = sweep_csv(amplitude_sweep(*f.R, f.spec, f.psi, 2, pi / 4, 2));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,re,im,modulus");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("exact characteristic polynomial") {
  Fixture f5("F2[x,y]/(x^2,y^2)", "R, x*y");
  CHECK(char_poly_exact(f5.G) == expand_factored({{9, 1}, {-7, 1}, {1, 6}, {-1, 8}}));
  Fixture f6("F2[x,y]/(x^2,y^2)", "R, x, x*y");
  CHECK(char_poly_exact(f6.G) == expand_factored({{11, 1}, {-5, 1}, {3, 2}, {-1, 12}}));
  RingPtr z4 = build_ring("Z4");
  CHECK(char_poly_exact(GcdGraph(z4, make_divisor_set(*z4, std::vector<Ideal>{}))).to_string() == "t^4");
  Fixture big("Z4 x GF(4) x F5", "R");
  CHECK_THROWS_AS(char_poly_exact(big.G), ResourceCapError);
  CHECK_THROWS_AS(char_poly_exact(f5.G, 8), ResourceCapError);
}

TEST_CASE("delta from equal eigenvalues") {
  Fixture f6("F2[x,y]/(x^2,y^2)", "R, x, x*y");
  const Subset d6 = delta_full(f6.spec, *f6.R);
  CHECK(d6.contains(f6.R->sub(f6.at("x*y + x + y"), f6.R->one())));
  CHECK(delta_prime(*f6.R).is_subset_of(d6));

  RingPtr gf4 = build_ring("GF(4)");
  GcdGraph complete(gf4, make_divisor_set(*gf4, std::string_view("R")));
  CHECK(delta_full(compute_spectrum(complete, build_psi(*gf4)), *gf4).size() == 4);

  Fixture z4("Z4", "R");
  const Subset dz = delta_full(z4.spec, *z4.R);
  CHECK(dz.elements() == std::vector<Element>{0, 2});
}

TEST_CASE("equal-eigenvalue group contains unit differences and kills targets") {
  for (const auto& text : full_catalog()) {
    RingPtr R = build_ring(text);
    if (R->order() > 256) continue;
    CAPTURE(text);
    Functional psi = build_psi(*R);
    const Subset dp = delta_prime(*R);
    for (const DivisorSet& D : all_divisor_sets(*R, 2)) {
      GcdGraph G(R, D);
      Spectrum spec = compute_spectrum(G, psi);
      const Subset d = delta_full(spec, *R);
      REQUIRE(dp.is_subset_of(d));
      PstVerdict v = has_pst(G, spec, psi);
      if (!v.exists) continue;
      for (Element x : d.elements()) REQUIRE(psi(R->mul(v.target, x)) == 0);
    }
  }
}

TEST_CASE("verify verdict") {
  Fixture f5("F2[x,y]/(x^2,y^2)", "R, x*y");
  PstVerdict v = has_pst(f5.G, f5.spec, f5.psi);
  VerdictCheck ok = verify_verdict(f5.G, f5.spec, f5.psi, v);
  CHECK(ok.ok);
  CHECK(ok.modulus_at_time > 1 - 1e-9);
  CHECK(ok.modulus_at_next > 1 - 1e-9);

  Fixture z4("Z4", "R");
  CHECK(verify_verdict(z4.G, z4.spec, z4.psi, solve_pst(z4.G, 2, z4.spec, z4.psi)).ok);

  PstVerdict halved = v;
  halved.time = v.time / 2;
  CHECK_FALSE(verify_verdict(f5.G, f5.spec, f5.psi, halved).ok);

  PstVerdict none;
  CHECK_THROWS_AS(verify_verdict(f5.G, f5.spec, f5.psi, none), InvalidArgument);
}
