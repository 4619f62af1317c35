#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "error.hpp"
#include "numtheory.hpp"
#include "ring_dsl.hpp"

using namespace gcdpst;

namespace {

std::string strip(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return s;
}

RingExpr random_component(std::mt19937& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const std::vector<std::string> names = {"x", "y", "z", "w", "u", "v"};
  const std::uint64_t primes[] = {2, 3, 5, 7};
  switch (pick(0, 3)) {
    case 0: {
      std::uint64_t m = static_cast<std::uint64_t>(pick(2, 60));
      return RingExpr{ZnExpr{m, is_prime(m) && pick(0, 1) == 1}};
    }
    case 1: {
      std::uint64_t m = static_cast<std::uint64_t>(pick(2, 9));
      bool field = is_prime(m) && pick(0, 1) == 1;
      int deg = pick(1, 3);
      std::vector<std::int64_t> f(deg + 1, 0);
      f[deg] = 1;
      bool pure = true;
      for (int i = 0; i < deg; ++i) {
        f[i] = pick(0, static_cast<int>(m) - 1);
        pure = pure && f[i] == 0;
      }
      if (field && pure) f[0] = 1;  // a pure power over a field is the truncated form
      return RingExpr{PolyQuotientExpr{ZnExpr{m, field}, names[pick(0, 5)], f, false}};
    }
    case 2: {
      std::uint64_t p = primes[pick(0, 3)];
      unsigned k = static_cast<unsigned>(pick(2, 3));
      return RingExpr{PolyQuotientExpr{ZnExpr{p, true}, "t", polymod::smallest_irreducible(p, k), true}};
    }
    default: {
      TruncatedExpr t;
      t.prime = primes[pick(0, 3)];
      t.extension_degree = static_cast<unsigned>(pick(1, 2));
      std::vector<std::string> pool = names;
      std::shuffle(pool.begin(), pool.end(), rng);
      int k = pick(1, 3);
      for (int i = 0; i < k; ++i) t.variables.push_back({pool[i], static_cast<unsigned>(pick(1, 4))});
      return RingExpr{t};
    }
  }
}

RingExpr random_ring(std::mt19937& rng) {
  int factors = std::uniform_int_distribution<int>(1, 3)(rng);
  if (factors == 1) return random_component(rng);
  ProductExpr p;
  for (int i = 0; i < factors; ++i) p.factors.push_back(random_component(rng));
  return RingExpr{p};
}

// Rewrites top-level " x " separators as "*".
std::string star_separators(const std::string& text) {
  std::string out;
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    depth += (c == '(' || c == '[') - (c == ')' || c == ']');
    if (depth == 0 && text.compare(i, 3, " x ") == 0) {
      out += '*';
      i += 2;
      continue;
    }
    out += c;
  }
  return out;
}

}  // namespace

TEST_CASE("parse_ring examples") {
  RingExpr z4 = parse_ring("Z4");
  REQUIRE(std::holds_alternative<ZnExpr>(z4.node));
  CHECK(std::get<ZnExpr>(z4.node).modulus == 4);

  RingExpr r = parse_ring("F2[x,y]/(x^2,y^2)");
  REQUIRE(std::holds_alternative<TruncatedExpr>(r.node));
  const auto& t = std::get<TruncatedExpr>(r.node);
  CHECK(t.prime == 2);
  CHECK(t.extension_degree == 1);
  CHECK(t.variables == std::vector<std::pair<std::string, unsigned>>{{"x", 2}, {"y", 2}});

  RingExpr prod = parse_ring("GF(4) x Z8");
  REQUIRE(std::holds_alternative<ProductExpr>(prod.node));
  const auto& factors = std::get<ProductExpr>(prod.node).factors;
  REQUIRE(factors.size() == 2);
  const auto& gf = std::get<PolyQuotientExpr>(factors[0].node);
  CHECK(gf.base.modulus == 2);
  CHECK(gf.variable == "t");
  CHECK(gf.modulus == std::vector<std::int64_t>{1, 1, 1});
  CHECK(std::get<ZnExpr>(factors[1].node).modulus == 8);
}

TEST_CASE("parse_ring accepts both product separators and spacing") {
  CHECK(parse_ring("Z4*F3") == parse_ring("Z4 x F3"));
  CHECK(parse_ring("  Z4   x   F3 ") == parse_ring("Z4 x F3"));
  CHECK(parse_ring("Z4[x]/(x^2 - 2)") == parse_ring("Z4[x]/(x^2+2)"));
}

TEST_CASE("parse_ring rejects malformed input with a position") {
  auto offset_of = [](const char* text) -> long {
    try {
      parse_ring(text);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    } catch (const Error&) {
      return -2;
    }
    return -1;
  };
  CHECK(offset_of("Z4 x") >= 4);
  CHECK(offset_of("Z4[") == 3);
  CHECK(offset_of("Q7") == 0);
  CHECK(offset_of("") == 0);
  CHECK_THROWS_AS(parse_ring("F4"), Error);          // F needs a prime
  CHECK_THROWS_AS(parse_ring("GF(6)"), Error);       // not a prime power
  CHECK_THROWS_AS(parse_ring("Z1"), Error);
  CHECK_THROWS_AS(parse_ring("Z4[x]/(2*x^2+1)"), Error);  // not monic
  CHECK_THROWS_AS(parse_ring("F2[x]/(x^2, y^2)"), Error);  // undeclared variable
}

TEST_CASE("parse_element examples") {
  RingExpr r = parse_ring("F2[x,y]/(x^2,y^2)");
  ElementExpr e = parse_element("x*y + x + 1", r);
  CHECK(e.terms.size() == 3);
  CHECK(parse_element("0", r).is_zero());
  CHECK(parse_element("2*x", r).is_zero());  // coefficients reduce mod 2

  RingExpr prod = parse_ring("GF(4) x Z8");
  ElementExpr pair = parse_element("(1, 2)", prod);
  REQUIRE(pair.is_tuple());
  CHECK(pair.components.size() == 2);

  CHECK_THROWS_AS(parse_element("z", r), ParseError);
  CHECK_THROWS_AS(parse_element("(1, 2, 3)", prod), ParseError);
  CHECK_THROWS_AS(parse_element("(1)", prod), ParseError);
}

TEST_CASE("parse_divisors examples") {
  RingExpr r = parse_ring("F2[x,y]/(x^2,y^2)");
  DivisorExpr d = parse_divisors("R, x*y", r);
  REQUIRE(d.size() == 2);
  CHECK(d[0].unit_ideal);
  CHECK_FALSE(d[1].unit_ideal);
  CHECK(d[1].generator == parse_element("x*y", r));

  DivisorExpr d2 = parse_divisors("R, x, x*y", r);
  REQUIRE(d2.size() == 3);
  CHECK(d2[0].unit_ideal);
  CHECK(d2[1].generator == parse_element("x", r));

  DivisorExpr d3 = parse_divisors("R", r);
  REQUIRE(d3.size() == 1);
  CHECK(d3[0].unit_ideal);

  CHECK_THROWS_AS(parse_divisors("R, 0", r), InvalidArgument);
  CHECK_THROWS_AS(parse_divisors("R, 2*x", r), InvalidArgument);
  CHECK_THROWS(parse_divisors("", r));

  RingExpr prod = parse_ring("Z4 x F3");
  CHECK(parse_divisors("R, (2, 0), (1, 1)", prod).size() == 3);
}

TEST_CASE("format_ring canonical spellings") {
  CHECK(format_ring(parse_ring("Z4")) == "Z4");
  CHECK(format_ring(parse_ring("F5")) == "F5");
  CHECK(format_ring(parse_ring("GF(4)")) == "GF(4)");
  CHECK(format_ring(parse_ring("F2[x,y]/(x^2,y^2)")) == "F2[x,y]/(x^2,y^2)");
  CHECK(format_ring(parse_ring("GF(4) * Z8")) == "GF(4) x Z8");
}

TEST_CASE("random AST round trips") {
  std::mt19937 rng(20240611);
  for (int i = 0; i < 300; ++i) {
    RingExpr ast = random_ring(rng);
    CAPTURE(format_ring(ast));
    REQUIRE_NOTHROW(validate_ring(ast));
    std::string text = format_ring(ast);
    RingExpr back = parse_ring(text);
    CHECK(back == ast);
    CHECK(strip(format_ring(back)) == strip(text));
    CHECK(ring_from_json(to_json(ast)) == ast);
    CHECK(parse_ring(star_separators(text)) == ast);
  }
}

TEST_CASE("JSON tags") {
  auto j = to_json(parse_ring("GF(4) x F2[x]/(x^2) x Z4"));
  CHECK(j["tag"] == "Product");
  CHECK(j["factors"][0]["tag"] == "PolyQuotient");
  CHECK(j["factors"][1]["tag"] == "TruncatedMultivar");
  CHECK(j["factors"][2]["tag"] == "Zn");
  CHECK_THROWS(ring_from_json(nlohmann::json{{"tag", "Nope"}}));
}
