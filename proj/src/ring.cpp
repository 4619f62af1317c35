#include "ring.hpp"

#include <algorithm>
#include <numeric>

#include "error.hpp"
#include "numtheory.hpp"

namespace gcdpst {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

Block make_zn(const ZnExpr& z) {
  Block b;
  b.kind = BlockKind::Zn;
  b.expr = RingExpr{z};
  b.modulus = z.modulus;
  b.rank = 1;
  b.basis_exponents = {{}};
  b.products = {{{0u, 1u}}};
  b.one = {1};
  b.psi_coordinate = 0;
  return b;
}

Block make_poly_quotient(const PolyQuotientExpr& pq) {
  Block b;
  b.kind = BlockKind::PolyQuotient;
  b.expr = RingExpr{pq};
  b.modulus = pq.base.modulus;
  const auto m = static_cast<std::int64_t>(b.modulus);
  const unsigned d = static_cast<unsigned>(pq.modulus.size() - 1);
  b.rank = d;
  b.variables = {pq.variable};
  for (unsigned i = 0; i < d; ++i) b.basis_exponents.push_back({i});
  b.poly_modulus = pq.modulus;
  // x^k mod f for k < 2d - 1.
  std::vector<polymod::Poly> powers;
  for (unsigned k = 0; k + 1 < 2 * d || k == 0; ++k) {
    polymod::Poly xk(k + 1, 0);
    xk[k] = 1;
    powers.push_back(polymod::rem_monic(xk, pq.modulus, m));
  }
  b.products.resize(static_cast<std::size_t>(d) * d);
  for (unsigned i = 0; i < d; ++i) {
    for (unsigned j = 0; j < d; ++j) {
      const auto& r = powers[i + j];
      for (unsigned k = 0; k < r.size(); ++k) {
        if (r[k] != 0) b.products[i * d + j].emplace_back(k, static_cast<std::uint64_t>(r[k]));
      }
    }
  }
  b.one.assign(d, 0);
  const auto one = polymod::rem_monic({1}, pq.modulus, m);
  for (unsigned k = 0; k < one.size(); ++k) b.one[k] = static_cast<std::uint64_t>(one[k]);
  b.psi_coordinate = d - 1;
  return b;
}

Block make_truncated(const TruncatedExpr& t) {
  Block b;
  b.kind = BlockKind::Truncated;
  b.expr = RingExpr{t};
  b.modulus = t.prime;
  const auto p = static_cast<std::int64_t>(t.prime);
  const unsigned k = t.extension_degree;
  const std::size_t nv = t.variables.size();
  polymod::Poly g;
  if (k > 1) g = polymod::smallest_irreducible(p, k);
  for (const auto& [name, e] : t.variables) b.variables.push_back(name);
  if (k > 1) b.variables.push_back("t");

  // Basis index = a + k * (b_1 + e_1 * (b_2 + ...)), a the power of t.
  std::uint64_t rank = k;
  for (const auto& [name, e] : t.variables) rank *= e;
  if (rank > 64) throw ResourceCapError("truncated ring rank too large");
  b.rank = static_cast<unsigned>(rank);
  std::vector<std::vector<unsigned>> box(b.rank);  // per basis: (b_1..b_v, a)
  for (unsigned idx = 0; idx < b.rank; ++idx) {
    unsigned rest = idx;
    std::vector<unsigned> ex(nv + (k > 1 ? 1 : 0), 0);
    const unsigned a = rest % k;
    rest /= k;
    for (std::size_t i = 0; i < nv; ++i) {
      ex[i] = rest % t.variables[i].second;
      rest /= t.variables[i].second;
    }
    if (k > 1) ex[nv] = a;
    box[idx] = ex;
  }
  b.basis_exponents = box;
  auto index_of = [&](unsigned a, const std::vector<unsigned>& vexp) {
    unsigned idx = 0;
    for (std::size_t i = nv; i-- > 0;) idx = idx * t.variables[i].second + vexp[i];
    return idx * k + a;
  };
  b.products.resize(static_cast<std::size_t>(b.rank) * b.rank);
  for (unsigned i = 0; i < b.rank; ++i) {
    for (unsigned j = 0; j < b.rank; ++j) {
      std::vector<unsigned> vexp(nv);
      bool vanishes = false;
      for (std::size_t v = 0; v < nv; ++v) {
        vexp[v] = box[i][v] + box[j][v];
        if (vexp[v] >= t.variables[v].second) vanishes = true;
      }
      if (vanishes) continue;
      const unsigned ai = k > 1 ? box[i][nv] : 0;
      const unsigned aj = k > 1 ? box[j][nv] : 0;
      polymod::Poly tp(ai + aj + 1, 0);
      tp[ai + aj] = 1;
      if (k > 1) tp = polymod::rem_monic(tp, g, p);
      for (unsigned a = 0; a < tp.size(); ++a) {
        if (tp[a] != 0) b.products[i * b.rank + j].emplace_back(index_of(a, vexp), static_cast<std::uint64_t>(tp[a]));
      }
    }
  }
  b.one.assign(b.rank, 0);
  b.one[0] = 1;
  std::vector<unsigned> top(nv);
  for (std::size_t v = 0; v < nv; ++v) top[v] = t.variables[v].second - 1;
  b.psi_coordinate = index_of(k - 1, top);
  for (unsigned a = 0; a < k; ++a) b.constant_coordinates.push_back(index_of(a, std::vector<unsigned>(nv, 0)));
  b.poly_modulus = g;
  return b;
}

}  // namespace

std::vector<std::uint64_t> Block::decode(std::uint32_t index) const {
  std::vector<std::uint64_t> d(rank);
  for (unsigned i = 0; i < rank; ++i) {
    d[i] = index % modulus;
    index = static_cast<std::uint32_t>(index / modulus);
  }
  return d;
}

std::uint32_t Block::encode(const std::vector<std::uint64_t>& digits) const {
  std::uint64_t idx = 0;
  for (unsigned i = rank; i-- > 0;) idx = idx * modulus + digits[i];
  return static_cast<std::uint32_t>(idx);
}

std::uint32_t Block::add(std::uint32_t a, std::uint32_t b) const {
  auto da = decode(a);
  const auto db = decode(b);
  for (unsigned i = 0; i < rank; ++i) da[i] = (da[i] + db[i]) % modulus;
  return encode(da);
}

std::uint32_t Block::neg(std::uint32_t a) const {
  auto da = decode(a);
  for (auto& x : da) x = (modulus - x) % modulus;
  return encode(da);
}

std::uint32_t Block::mul(std::uint32_t a, std::uint32_t b) const {
  const auto da = decode(a);
  const auto db = decode(b);
  std::vector<std::uint64_t> out(rank, 0);
  for (unsigned i = 0; i < rank; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < rank; ++j) {
      if (db[j] == 0) continue;
      const std::uint64_t c = mulmod(da[i], db[j], modulus);
      for (const auto& [k, s] : products[i * rank + j]) out[k] = (out[k] + mulmod(c, s, modulus)) % modulus;
    }
  }
  return encode(out);
}

bool Block::is_unit(std::uint32_t a) const {
  const auto d = decode(a);
  switch (kind) {
    case BlockKind::Zn:
      return std::gcd(d[0], modulus) == 1;
    case BlockKind::PolyQuotient: {
      // a is a unit iff it is a unit modulo every prime p | m, where the
      // quotient is F_p[x]/(f mod p).
      for (const auto p : prime_divisors(modulus)) {
        polymod::Poly ap(d.begin(), d.end());
        for (auto& c : ap) c = static_cast<std::int64_t>(static_cast<std::uint64_t>(c) % p);
        polymod::trim(ap);
        if (ap.empty()) return false;
        const auto g = polymod::gcd_field(ap, poly_modulus, static_cast<std::int64_t>(p));
        if (polymod::degree(g) != 0) return false;
      }
      return true;
    }
    case BlockKind::Truncated:
      // Local ring whose maximal ideal is spanned by the non-constant monomials.
      return std::any_of(constant_coordinates.begin(), constant_coordinates.end(),
                         [&](unsigned c) { return d[c] != 0; });
  }
  return false;
}

std::string Block::format(std::uint32_t a) const {
  const auto d = decode(a);
  std::vector<unsigned> nonzero;
  for (unsigned i = 0; i < rank; ++i) {
    if (d[i] != 0) nonzero.push_back(i);
  }
  if (nonzero.empty()) return "0";
  auto total = [&](unsigned i) {
    unsigned s = 0;
    for (auto e : basis_exponents[i]) s += e;
    return s;
  };
  std::sort(nonzero.begin(), nonzero.end(), [&](unsigned x, unsigned y) {
    if (total(x) != total(y)) return total(x) > total(y);
    return basis_exponents[x] > basis_exponents[y];
  });
  std::string out;
  for (std::size_t n = 0; n < nonzero.size(); ++n) {
    const unsigned i = nonzero[n];
    std::string mono;
    for (std::size_t v = 0; v < variables.size(); ++v) {
      const unsigned e = basis_exponents[i][v];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += variables[v];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    std::string term;
    if (mono.empty()) {
      term = std::to_string(d[i]);
    } else if (d[i] == 1) {
      term = mono;
    } else {
      term = std::to_string(d[i]) + "*" + mono;
    }
    if (n > 0) out += " + ";
    out += term;
  }
  return out;
}

std::uint32_t Block::from_expr(const ElementExpr& e) const {
  if (e.variables != variables) throw InvalidArgument("element variables do not match the ring component");
  // Image of each variable in the block.
  std::vector<std::uint32_t> var_elems;
  for (std::size_t v = 0; v < variables.size(); ++v) {
    std::vector<std::uint64_t> digits(rank, 0);
    if (kind == BlockKind::PolyQuotient) {
      const auto r = polymod::rem_monic({0, 1}, poly_modulus, static_cast<std::int64_t>(modulus));
      for (unsigned k = 0; k < r.size(); ++k) digits[k] = static_cast<std::uint64_t>(r[k]);
    } else {
      // Truncated: the basis element whose only exponent is v^1, if it exists.
      for (unsigned i = 0; i < rank; ++i) {
        bool match = true;
        for (std::size_t w = 0; w < variables.size(); ++w) {
          if (basis_exponents[i][w] != (w == v ? 1u : 0u)) match = false;
        }
        if (match) digits[i] = 1;
      }
    }
    var_elems.push_back(encode(digits));
  }
  const std::uint32_t one_idx = encode(one);
  std::uint32_t acc = 0;
  for (const auto& [exps, coef] : e.terms) {
    std::uint32_t term = one_idx;
    for (std::size_t v = 0; v < exps.size(); ++v) {
      for (unsigned k = 0; k < exps[v]; ++k) term = mul(term, var_elems[v]);
    }
    auto digits = decode(term);
    const auto c = static_cast<std::uint64_t>(floor_mod(coef, static_cast<std::int64_t>(modulus)));
    for (auto& x : digits) x = mulmod(x, c, modulus);
    acc = add(acc, encode(digits));
  }
  return acc;
}

Ring::Ring(RingExpr expr, std::vector<Block> blocks, const RingOptions& options)
    : expr_(std::move(expr)), blocks_(std::move(blocks)) {
  std::uint64_t order = 1;
  for (const auto& b : blocks_) {
    strides_.push_back(static_cast<std::uint32_t>(order));
    order *= b.order;
    if (order > options.order_cap) {
      throw ResourceCapError("ring order exceeds the configured cap of " + std::to_string(options.order_cap));
    }
  }
  order_ = static_cast<std::uint32_t>(order);
  characteristic_ = 1;
  for (const auto& b : blocks_) characteristic_ = std::lcm(characteristic_, b.modulus);

  std::vector<std::uint32_t> ones;
  for (const auto& b : blocks_) ones.push_back(b.encode(b.one));
  one_ = from_components(ones);

  neg_.resize(order_);
  for (Element a = 0; a < order_; ++a) {
    std::vector<std::uint32_t> parts;
    for (std::size_t i = 0; i < blocks_.size(); ++i) parts.push_back(blocks_[i].neg(block_component(a, i)));
    neg_[a] = from_components(parts);
  }

  if (order_ <= options.table_limit && order_ <= 65536) {
    const std::size_t n = order_;
    add_table_.resize(n * n);
    mul_table_.resize(n * n);
    for (Element a = 0; a < order_; ++a) {
      for (Element b = a; b < order_; ++b) {
        const auto s = static_cast<std::uint16_t>(add_slow(a, b));
        const auto p = static_cast<std::uint16_t>(mul_slow(a, b));
        add_table_[a * n + b] = add_table_[b * n + a] = s;
        mul_table_[a * n + b] = mul_table_[b * n + a] = p;
      }
    }
  }

  unit_flag_.assign(order_, false);
  for (Element a = 0; a < order_; ++a) {
    bool unit = true;
    for (std::size_t i = 0; i < blocks_.size() && unit; ++i) unit = blocks_[i].is_unit(block_component(a, i));
    if (unit) {
      unit_flag_[a] = true;
      units_.push_back(a);
    }
  }
}

Element Ring::from_components(const std::vector<std::uint32_t>& parts) const {
  Element a = 0;
  for (std::size_t i = 0; i < blocks_.size(); ++i) a += parts[i] * strides_[i];
  return a;
}

Element Ring::add_slow(Element a, Element b) const {
  std::vector<std::uint32_t> parts;
  for (std::size_t i = 0; i < blocks_.size(); ++i) parts.push_back(blocks_[i].add(block_component(a, i), block_component(b, i)));
  return from_components(parts);
}

Element Ring::mul_slow(Element a, Element b) const {
  std::vector<std::uint32_t> parts;
  for (std::size_t i = 0; i < blocks_.size(); ++i) parts.push_back(blocks_[i].mul(block_component(a, i), block_component(b, i)));
  return from_components(parts);
}

Element Ring::multiple(std::int64_t k, Element a) const {
  const auto n = static_cast<std::int64_t>(characteristic_);
  std::uint64_t times = static_cast<std::uint64_t>(floor_mod(k, n));
  Element acc = 0, base = a;
  while (times > 0) {
    if (times & 1) acc = add(acc, base);
    base = add(base, base);
    times >>= 1;
  }
  return acc;
}

Element Ring::pow(Element a, std::uint64_t e) const {
  Element acc = one_, base = a;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

std::string Ring::format(Element a) const {
  if (blocks_.size() == 1 && !std::holds_alternative<ProductExpr>(expr_.node)) return blocks_[0].format(a);
  std::string out = "(";
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i > 0) out += ", ";
    out += blocks_[i].format(block_component(a, i));
  }
  return out + ")";
}

Element Ring::element(const ElementExpr& e) const {
  if (std::holds_alternative<ProductExpr>(expr_.node)) {
    if (e.components.size() != blocks_.size()) throw InvalidArgument("tuple arity mismatch");
    std::vector<std::uint32_t> parts;
    for (std::size_t i = 0; i < blocks_.size(); ++i) parts.push_back(blocks_[i].from_expr(e.components[i]));
    return from_components(parts);
  }
  if (e.is_tuple()) throw InvalidArgument("tuple literal for a non-product ring");
  return blocks_[0].from_expr(e);
}

Element Ring::parse_element(std::string_view text) const { return element(gcdpst::parse_element(text, expr_)); }

nlohmann::json Ring::to_json() const {
  nlohmann::json radices = nlohmann::json::array();
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : blocks_) {
    for (unsigned i = 0; i < b.rank; ++i) radices.push_back(b.modulus);
    blocks.push_back({{"ring", format_ring(b.expr)}, {"modulus", b.modulus}, {"rank", b.rank}, {"order", b.order}});
  }
  return {{"ring", description()},
          {"ast", gcdpst::to_json(expr_)},
          {"order", order_},
          {"n", characteristic_},
          {"radices", radices},
          {"blocks", blocks},
          {"units", units_.size()}};
}

RingPtr build_ring(const RingExpr& expr, const RingOptions& options) {
  validate_ring(expr);
  std::vector<const RingExpr*> leaves;
  if (const auto* prod = std::get_if<ProductExpr>(&expr.node)) {
    for (const auto& f : prod->factors) leaves.push_back(&f);
  } else {
    leaves.push_back(&expr);
  }
  std::vector<Block> blocks;
  std::uint64_t total = 1;
  for (const auto* leaf : leaves) {
    Block b = std::visit(
        [](const auto& n) -> Block {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, ZnExpr>) {
            return make_zn(n);
          } else if constexpr (std::is_same_v<T, PolyQuotientExpr>) {
            return make_poly_quotient(n);
          } else if constexpr (std::is_same_v<T, TruncatedExpr>) {
            return make_truncated(n);
          } else {
            throw InvalidArgument("nested products are not supported");
          }
        },
        leaf->node);
    std::uint64_t o = 1;
    for (unsigned i = 0; i < b.rank; ++i) {
      o *= b.modulus;
      if (o > options.order_cap) throw ResourceCapError("ring order exceeds the configured cap of " + std::to_string(options.order_cap));
    }
    b.order = static_cast<std::uint32_t>(o);
    total *= o;
    if (total > options.order_cap) throw ResourceCapError("ring order exceeds the configured cap of " + std::to_string(options.order_cap));
    blocks.push_back(std::move(b));
  }
  return std::make_shared<const Ring>(expr, std::move(blocks), options);
}

}  // namespace gcdpst
