#pragma once

// Text DSL for finite commutative Frobenius rings, their elements, and
// divisor sets. See docs/grammar.md for the EBNF.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

namespace gcdpst {

/// Z/m. `field_spelling` records that the text used the field notation
/// ("F5" or "GF(5)"), which is only legal for prime m.
struct ZnExpr {
  std::uint64_t modulus = 2;
  bool field_spelling = false;
  bool operator==(const ZnExpr&) const = default;
};

/// base[var]/(modulus), modulus monic with coefficients (low to high) reduced
/// into [0, base.modulus). `galois` marks the GF(q) sugar, whose modulus is
/// the canonical irreducible polynomial and whose variable is "t".
struct PolyQuotientExpr {
  ZnExpr base;
  std::string variable;
  std::vector<std::int64_t> modulus;
  bool galois = false;
  bool operator==(const PolyQuotientExpr&) const = default;
};

/// F_q[v_1..v_k]/(v_1^{e_1}, ..., v_k^{e_k}) with q = prime^extension_degree.
/// For extension_degree > 1 the field generator is the reserved variable "t".
struct TruncatedExpr {
  std::uint64_t prime = 2;
  unsigned extension_degree = 1;
  std::vector<std::pair<std::string, unsigned>> variables;
  bool operator==(const TruncatedExpr&) const = default;
};

struct RingExpr;

struct ProductExpr {
  std::vector<RingExpr> factors;
  bool operator==(const ProductExpr& other) const;
};

struct RingExpr {
  std::variant<ZnExpr, PolyQuotientExpr, TruncatedExpr, ProductExpr> node;
  bool operator==(const RingExpr&) const = default;
};

inline bool ProductExpr::operator==(const ProductExpr& other) const {
  return factors == other.factors;
}

/// Polynomial literal bound to the variables of one non-product ring
/// component, or a tuple of those for product rings. Coefficients are already
/// reduced modulo the component's characteristic.
struct ElementExpr {
  std::vector<std::string> variables;
  std::map<std::vector<unsigned>, std::int64_t> terms;  // exponents -> coefficient
  std::vector<ElementExpr> components;                  // non-empty iff tuple
  bool is_tuple() const { return !components.empty(); }
  bool is_zero() const;
  bool operator==(const ElementExpr&) const = default;
};

struct DivisorEntry {
  bool unit_ideal = false;
  ElementExpr generator;  // unused when unit_ideal
  bool operator==(const DivisorEntry&) const = default;
};

using DivisorExpr = std::vector<DivisorEntry>;

RingExpr parse_ring(std::string_view text);
ElementExpr parse_element(std::string_view text, const RingExpr& ring);
DivisorExpr parse_divisors(std::string_view text, const RingExpr& ring);

std::string format_ring(const RingExpr& expr);

/// Throws InvalidArgument when an AST violates the node invariants.
void validate_ring(const RingExpr& expr);

/// Variables an element of a non-product component may mention, in binding order.
std::vector<std::string> component_variables(const RingExpr& component);
/// Modulus applied to literal coefficients for a non-product component.
std::uint64_t component_characteristic(const RingExpr& component);

nlohmann::json to_json(const RingExpr& expr);
RingExpr ring_from_json(const nlohmann::json& j);

}  // namespace gcdpst
