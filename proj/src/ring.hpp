#pragma once

// Concrete finite commutative rings realized from a RingExpr.
//
// Every supported block is a free Z/m-module of some rank D with a fixed
// monomial basis; an element of a block is its digit vector in that basis and
// an element of the whole ring is the mixed-radix index of the block tuple
// (block 0 least significant, basis element 1 of each block least
// significant). Index 0 is zero.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ring_dsl.hpp"

namespace gcdpst {

using Element = std::uint32_t;

struct RingOptions {
  std::uint32_t order_cap = 1u << 16;
  /// Full addition/multiplication tables are built when |R| is at most this.
  std::uint32_t table_limit = 2048;
};

enum class BlockKind { Zn, PolyQuotient, Truncated };

/// One direct factor of the ring as built from the AST.
struct Block {
  BlockKind kind = BlockKind::Zn;
  RingExpr expr;
  std::uint64_t modulus = 2;  // digit radix; also the block's additive exponent
  unsigned rank = 1;
  std::uint32_t order = 2;
  std::vector<std::string> variables;
  std::vector<std::vector<unsigned>> basis_exponents;  // per basis element, per variable
  unsigned psi_coordinate = 0;                         // basis index of the top monomial

  // Structure constants: basis_i * basis_j = sum_k c * basis_k.
  std::vector<std::vector<std::pair<unsigned, std::uint64_t>>> products;
  std::vector<std::uint64_t> one;
  std::vector<std::int64_t> poly_modulus;      // PolyQuotient only
  std::vector<unsigned> constant_coordinates;  // Truncated: basis elements free of ring variables

  std::vector<std::uint64_t> decode(std::uint32_t index) const;
  std::uint32_t encode(const std::vector<std::uint64_t>& digits) const;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  bool is_unit(std::uint32_t a) const;
  std::string format(std::uint32_t a) const;
  std::uint32_t from_expr(const ElementExpr& e) const;
};

class Ring {
 public:
  Ring(RingExpr expr, std::vector<Block> blocks, const RingOptions& options);

  const RingExpr& expr() const { return expr_; }
  std::string description() const { return format_ring(expr_); }
  std::uint32_t order() const { return order_; }
  /// Least n >= 1 with nR = 0.
  std::uint64_t characteristic() const { return characteristic_; }

  Element zero() const { return 0; }
  Element one() const { return one_; }

  Element add(Element a, Element b) const {
    return add_table_.empty() ? add_slow(a, b) : add_table_[static_cast<std::size_t>(a) * order_ + b];
  }
  Element mul(Element a, Element b) const {
    return mul_table_.empty() ? mul_slow(a, b) : mul_table_[static_cast<std::size_t>(a) * order_ + b];
  }
  Element neg(Element a) const { return neg_[a]; }
  Element sub(Element a, Element b) const { return add(a, neg_[b]); }
  /// k * a for an integer k (may be negative).
  Element multiple(std::int64_t k, Element a) const;
  Element pow(Element a, std::uint64_t e) const;

  bool is_unit(Element a) const { return unit_flag_[a]; }
  const std::vector<Element>& units() const { return units_; }

  const std::vector<Block>& blocks() const { return blocks_; }
  std::uint32_t block_component(Element a, std::size_t block) const {
    return (a / strides_[block]) % blocks_[block].order;
  }
  Element from_components(const std::vector<std::uint32_t>& parts) const;

  /// DSL rendering, e.g. "x*y + x + 1" or "(t, 2)" for products.
  std::string format(Element a) const;
  Element element(const ElementExpr& e) const;
  Element parse_element(std::string_view text) const;

  nlohmann::json to_json() const;

 private:
  Element add_slow(Element a, Element b) const;
  Element mul_slow(Element a, Element b) const;

  RingExpr expr_;
  std::vector<Block> blocks_;
  std::vector<std::uint32_t> strides_;
  std::uint32_t order_ = 1;
  std::uint64_t characteristic_ = 1;
  Element one_ = 0;
  std::vector<std::uint16_t> add_table_;
  std::vector<std::uint16_t> mul_table_;
  std::vector<Element> neg_;
  std::vector<bool> unit_flag_;
  std::vector<Element> units_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr build_ring(const RingExpr& expr, const RingOptions& options = {});
inline RingPtr build_ring(std::string_view text, const RingOptions& options = {}) {
  return build_ring(parse_ring(text), options);
}

}  // namespace gcdpst
