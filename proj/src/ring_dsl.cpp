#include "ring_dsl.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>
#include <sstream>

#include "error.hpp"
#include "numtheory.hpp"

namespace gcdpst {

namespace {

using Monomials = std::map<std::vector<unsigned>, std::int64_t>;

constexpr unsigned kMaxLiteralExponent = 4096;

void add_term(Monomials& p, const std::vector<unsigned>& exps, std::int64_t c, std::int64_t m) {
  auto& slot = p[exps];
  slot = floor_mod(slot + c, m);
  if (slot == 0) p.erase(exps);
}

Monomials multiply(const Monomials& a, const Monomials& b, std::int64_t m) {
  Monomials out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<unsigned> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      // ca, cb < m <= 2^32, so the product fits.
      add_term(out, e, static_cast<std::int64_t>((static_cast<unsigned __int128>(ca) * cb) % m), m);
    }
  }
  return out;
}

class Cursor {
 public:
  Cursor(std::string_view text, std::size_t base_offset = 0) : text_(text), base_(base_offset) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool starts_with(std::string_view s) {
    skip_ws();
    return text_.substr(pos_).starts_with(s);
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::uint64_t number() {
    skip_ws();
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::uint64_t d = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint32_t>::max() - d) / 10) fail("integer literal too large", start);
      v = v * 10 + d;
      ++pos_;
    }
    if (pos_ == start) fail("expected integer");
    return v;
  }
  bool at_identifier() {
    const char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    if (!at_identifier()) fail("expected identifier");
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }
  std::size_t position() const { return base_ + pos_; }
  void advance(std::size_t n) { pos_ += n; }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, position()); }
  [[noreturn]] void fail(const std::string& message, std::size_t local) const {
    throw ParseError(message, base_ + local);
  }

 private:
  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

/// Polynomial expression over a fixed variable list, coefficients mod m.
class PolyParser {
 public:
  PolyParser(Cursor& cur, const std::vector<std::string>& vars, std::int64_t m)
      : cur_(cur), vars_(vars), m_(m) {}

  Monomials expression() {
    Monomials acc;
    bool negate = false;
    if (cur_.accept('-')) {
      negate = true;
    } else {
      cur_.accept('+');
    }
    accumulate(acc, term(), negate);
    for (;;) {
      if (cur_.accept('+')) {
        accumulate(acc, term(), false);
      } else if (cur_.accept('-')) {
        accumulate(acc, term(), true);
      } else {
        break;
      }
    }
    return acc;
  }

 private:
  void accumulate(Monomials& acc, const Monomials& t, bool negate) {
    for (const auto& [e, c] : t) add_term(acc, e, negate ? -c : c, m_);
  }

  Monomials term() {
    Monomials acc = factor();
    while (cur_.accept('*')) acc = multiply(acc, factor(), m_);
    return acc;
  }

  Monomials factor() {
    Monomials base = primary();
    if (cur_.accept('^')) {
      const std::size_t at = cur_.position();
      const std::uint64_t e = cur_.number();
      if (e > kMaxLiteralExponent) throw ParseError("exponent too large", at);
      Monomials r = constant(1);
      for (std::uint64_t i = 0; i < e; ++i) r = multiply(r, base, m_);
      return r;
    }
    return base;
  }

  Monomials primary() {
    if (cur_.accept('(')) {
      Monomials inner = expression();
      cur_.expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(cur_.peek()))) {
      return constant(static_cast<std::int64_t>(cur_.number() % static_cast<std::uint64_t>(m_)));
    }
    if (cur_.at_identifier()) {
      cur_.skip_ws();
      const std::size_t at = cur_.position();
      const std::string name = cur_.identifier();
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) throw ParseError("unknown variable '" + name + "'", at);
      std::vector<unsigned> e(vars_.size(), 0);
      e[static_cast<std::size_t>(it - vars_.begin())] = 1;
      Monomials r;
      add_term(r, e, 1, m_);
      return r;
    }
    cur_.fail("expected number, variable or '('");
  }

  Monomials constant(std::int64_t c) {
    Monomials r;
    add_term(r, std::vector<unsigned>(vars_.size(), 0), c, m_);
    return r;
  }

  Cursor& cur_;
  const std::vector<std::string>& vars_;
  std::int64_t m_;
};

/// Univariate coefficient vector (low to high) from a single-variable polynomial.
std::vector<std::int64_t> univariate(const Monomials& p) {
  std::vector<std::int64_t> out;
  for (const auto& [e, c] : p) {
    if (out.size() <= e[0]) out.resize(e[0] + 1, 0);
    out[e[0]] = c;
  }
  return out;
}

void check_monic(const std::vector<std::int64_t>& f, std::size_t at) {
  if (f.size() < 2) throw ParseError("modulus polynomial must have degree >= 1", at);
  if (f.back() != 1) throw ParseError("modulus polynomial is not monic", at);
}

/// The variable index and exponent if p is exactly v^e (e >= 1).
std::optional<std::pair<std::size_t, unsigned>> pure_power(const Monomials& p) {
  if (p.size() != 1) return std::nullopt;
  const auto& [e, c] = *p.begin();
  if (c != 1) return std::nullopt;
  std::optional<std::pair<std::size_t, unsigned>> found;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (found) return std::nullopt;
    found = std::make_pair(i, e[i]);
  }
  return found;
}

struct FieldSpec {
  std::uint64_t prime;
  unsigned degree;
};

RingExpr parse_atom(Cursor& cur) {
  cur.skip_ws();
  const std::size_t atom_start = cur.position();
  bool is_z = false;
  std::uint64_t z_modulus = 0;
  FieldSpec field{0, 0};

  if (cur.starts_with("GF(")) {
    cur.advance(3);
    const std::size_t at = cur.position();
    const std::uint64_t q = cur.number();
    cur.expect(')');
    auto pk = prime_power(q);
    if (!pk) throw ParseError("field order " + std::to_string(q) + " is not a prime power", at);
    field = {pk->first, pk->second};
  } else if (cur.accept('F')) {
    const std::size_t at = cur.position();
    const std::uint64_t p = cur.number();
    if (!is_prime(p)) throw ParseError("F" + std::to_string(p) + " requires a prime; use GF(q) for prime powers", at);
    field = {p, 1};
  } else if (cur.accept('Z')) {
    const std::size_t at = cur.position();
    z_modulus = cur.number();
    if (z_modulus < 2) throw ParseError("modulus must be at least 2", at);
    is_z = true;
  } else {
    cur.fail("expected ring atom (Z<m>, F<p> or GF(<q>))");
  }

  if (cur.peek() != '[') {
    if (is_z) return RingExpr{ZnExpr{z_modulus, false}};
    if (field.degree == 1) return RingExpr{ZnExpr{field.prime, true}};
    return RingExpr{PolyQuotientExpr{ZnExpr{field.prime, true}, "t",
                                     polymod::smallest_irreducible(static_cast<std::int64_t>(field.prime), field.degree),
                                     true}};
  }

  cur.expect('[');
  std::vector<std::string> vars;
  std::vector<std::size_t> var_pos;
  do {
    cur.skip_ws();
    var_pos.push_back(cur.position());
    std::string v = cur.identifier();
    if (std::find(vars.begin(), vars.end(), v) != vars.end()) throw ParseError("duplicate variable '" + v + "'", var_pos.back());
    if (!is_z && field.degree > 1 && v == "t") throw ParseError("variable 't' is reserved for the GF(q) generator", var_pos.back());
    vars.push_back(std::move(v));
  } while (cur.accept(','));
  cur.expect(']');
  cur.expect('/');

  const std::int64_t coeff_mod = static_cast<std::int64_t>(is_z ? z_modulus : field.prime);
  std::vector<Monomials> relations;
  std::vector<std::size_t> rel_pos;
  auto one_relation = [&] {
    cur.skip_ws();
    rel_pos.push_back(cur.position());
    PolyParser pp(cur, vars, coeff_mod);
    relations.push_back(pp.expression());
  };
  if (cur.accept('(')) {
    do {
      one_relation();
    } while (cur.accept(','));
    cur.expect(')');
  } else {
    one_relation();
  }

  if (is_z) {
    if (vars.size() != 1 || relations.size() != 1) {
      throw ParseError("Z<m>[...] supports exactly one variable and one relation", atom_start);
    }
    auto f = univariate(relations[0]);
    check_monic(f, rel_pos[0]);
    return RingExpr{PolyQuotientExpr{ZnExpr{z_modulus, false}, vars[0], f, false}};
  }

  if (vars.size() == 1 && relations.size() == 1 && !pure_power(relations[0])) {
    if (field.degree > 1) throw ParseError("only pure-power relations are supported over GF(q)", rel_pos[0]);
    auto f = univariate(relations[0]);
    check_monic(f, rel_pos[0]);
    return RingExpr{PolyQuotientExpr{ZnExpr{field.prime, true}, vars[0], f, false}};
  }

  if (relations.size() != vars.size()) {
    throw ParseError("multivariate quotients need one pure-power relation per variable", atom_start);
  }
  std::vector<unsigned> exponents(vars.size(), 0);
  for (std::size_t i = 0; i < relations.size(); ++i) {
    auto pp = pure_power(relations[i]);
    if (!pp) throw ParseError("multivariate relations must be pure powers v^e", rel_pos[i]);
    if (exponents[pp->first] != 0) throw ParseError("variable '" + vars[pp->first] + "' has two relations", rel_pos[i]);
    exponents[pp->first] = pp->second;
  }
  TruncatedExpr t{field.prime, field.degree, {}};
  for (std::size_t i = 0; i < vars.size(); ++i) t.variables.emplace_back(vars[i], exponents[i]);
  return RingExpr{t};
}

std::string format_univariate(const std::vector<std::int64_t>& f, const std::string& var) {
  std::vector<std::string> terms;
  for (std::size_t i = f.size(); i-- > 0;) {
    const std::int64_t c = f[i];
    if (c == 0) continue;
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (mono.empty()) {
      terms.push_back(std::to_string(c));
    } else if (c == 1) {
      terms.push_back(mono);
    } else {
      terms.push_back(std::to_string(c) + "*" + mono);
    }
  }
  if (terms.empty()) return "0";
  std::string out = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) out += " + " + terms[i];
  return out;
}

std::string format_field(std::uint64_t p, unsigned k) {
  if (k == 1) return "F" + std::to_string(p);
  return "GF(" + std::to_string(checked_pow(p, k)) + ")";
}

void validate_zn(const ZnExpr& z) {
  if (z.modulus < 2) throw InvalidArgument("Zn modulus must be at least 2");
  if (z.field_spelling && !is_prime(z.modulus)) throw InvalidArgument("field spelling requires a prime modulus");
}

}  // namespace

void validate_ring(const RingExpr& e) {
  std::visit(
      [](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ZnExpr>) {
          validate_zn(n);
        } else if constexpr (std::is_same_v<T, PolyQuotientExpr>) {
          validate_zn(n.base);
          if (n.modulus.size() < 2 || n.modulus.back() != 1) throw InvalidArgument("modulus polynomial must be monic of degree >= 1");
          for (auto c : n.modulus) {
            if (c < 0 || static_cast<std::uint64_t>(c) >= n.base.modulus) throw InvalidArgument("modulus coefficient out of range");
          }
          if (n.variable.empty()) throw InvalidArgument("missing variable name");
          if (n.galois) {
            if (n.modulus.size() < 3) throw InvalidArgument("GF(p) is spelled as the prime field F<p>");
            if (!n.base.field_spelling || n.variable != "t" ||
                n.modulus != polymod::smallest_irreducible(static_cast<std::int64_t>(n.base.modulus),
                                                           static_cast<unsigned>(n.modulus.size() - 1))) {
              throw InvalidArgument("GF(q) node does not carry the canonical modulus");
            }
          }
        } else if constexpr (std::is_same_v<T, TruncatedExpr>) {
          if (!is_prime(n.prime)) throw InvalidArgument("truncated ring needs a prime characteristic");
          if (n.extension_degree < 1) throw InvalidArgument("extension degree must be >= 1");
          if (n.variables.empty()) throw InvalidArgument("truncated ring needs at least one variable");
          std::set<std::string> seen;
          for (const auto& [v, ex] : n.variables) {
            if (ex < 1) throw InvalidArgument("exponents must be >= 1");
            if (!seen.insert(v).second) throw InvalidArgument("duplicate variable");
            if (n.extension_degree > 1 && v == "t") throw InvalidArgument("variable 't' is reserved");
          }
        } else {
          if (n.factors.empty()) throw InvalidArgument("product needs at least one factor");
          for (const auto& f : n.factors) {
            if (std::holds_alternative<ProductExpr>(f.node)) throw InvalidArgument("nested products are not supported");
            validate_ring(f);
          }
        }
      },
      e.node);
}

namespace {

ElementExpr parse_component_element(Cursor& cur, const RingExpr& component) {
  ElementExpr out;
  out.variables = component_variables(component);
  PolyParser pp(cur, out.variables, static_cast<std::int64_t>(component_characteristic(component)));
  out.terms = pp.expression();
  return out;
}

ElementExpr parse_element_at(std::string_view text, const RingExpr& ring, std::size_t offset) {
  Cursor cur(text, offset);
  ElementExpr out;
  if (const auto* prod = std::get_if<ProductExpr>(&ring.node)) {
    if (cur.peek() == '(') {
      cur.expect('(');
      for (std::size_t i = 0; i < prod->factors.size(); ++i) {
        if (i > 0) {
          if (!cur.accept(',')) cur.fail("tuple arity mismatch: ring has " + std::to_string(prod->factors.size()) + " factors");
        }
        out.components.push_back(parse_component_element(cur, prod->factors[i]));
      }
      if (cur.peek() == ',') cur.fail("tuple arity mismatch: ring has " + std::to_string(prod->factors.size()) + " factors");
      cur.expect(')');
    } else {
      // A bare integer is its image under Z -> R.
      const std::vector<std::string> none;
      for (const auto& f : prod->factors) {
        Cursor sub(text, offset);
        PolyParser pp(sub, none, static_cast<std::int64_t>(component_characteristic(f)));
        ElementExpr c;
        c.variables = component_variables(f);
        for (const auto& [e, coef] : pp.expression()) {
          c.terms[std::vector<unsigned>(c.variables.size(), 0)] = coef;
        }
        if (!sub.at_end()) sub.fail("product ring elements are written as tuples (a, b, ...)");
        out.components.push_back(std::move(c));
      }
      return out;
    }
  } else {
    out = parse_component_element(cur, ring);
  }
  if (!cur.at_end()) cur.fail("unexpected trailing input");
  return out;
}

}  // namespace

bool ElementExpr::is_zero() const {
  for (const auto& [e, c] : terms) {
    if (c != 0) return false;
  }
  for (const auto& c : components) {
    if (!c.is_zero()) return false;
  }
  return true;
}

std::vector<std::string> component_variables(const RingExpr& component) {
  return std::visit(
      [](const auto& n) -> std::vector<std::string> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ZnExpr>) {
          return {};
        } else if constexpr (std::is_same_v<T, PolyQuotientExpr>) {
          return {n.variable};
        } else if constexpr (std::is_same_v<T, TruncatedExpr>) {
          std::vector<std::string> v;
          for (const auto& [name, e] : n.variables) v.push_back(name);
          if (n.extension_degree > 1) v.push_back("t");
          return v;
        } else {
          throw InvalidArgument("product rings have no variables of their own");
        }
      },
      component.node);
}

std::uint64_t component_characteristic(const RingExpr& component) {
  return std::visit(
      [](const auto& n) -> std::uint64_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ZnExpr>) {
          return n.modulus;
        } else if constexpr (std::is_same_v<T, PolyQuotientExpr>) {
          return n.base.modulus;
        } else if constexpr (std::is_same_v<T, TruncatedExpr>) {
          return n.prime;
        } else {
          throw InvalidArgument("product rings are not components");
        }
      },
      component.node);
}

RingExpr parse_ring(std::string_view text) {
  Cursor cur(text);
  if (cur.at_end()) throw ParseError("empty ring description", 0);
  std::vector<RingExpr> atoms;
  atoms.push_back(parse_atom(cur));
  while (!cur.at_end()) {
    const char c = cur.peek();
    if (c != 'x' && c != '*') cur.fail("expected 'x' between product factors");
    cur.advance(1);
    atoms.push_back(parse_atom(cur));
  }
  if (atoms.size() == 1) return std::move(atoms[0]);
  return RingExpr{ProductExpr{std::move(atoms)}};
}

ElementExpr parse_element(std::string_view text, const RingExpr& ring) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) throw ParseError("empty element literal", 0);
  return parse_element_at(text, ring, 0);
}

DivisorExpr parse_divisors(std::string_view text, const RingExpr& ring) {
  DivisorExpr out;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const char c = i < text.size() ? text[i] : ',';
    if (c == '(') ++depth;
    if (c == ')') {
      if (--depth < 0) throw ParseError("unbalanced ')'", i);
    }
    if (c != ',' || depth != 0) continue;
    std::string_view entry = text.substr(start, i - start);
    const auto first = entry.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) throw ParseError("empty divisor entry", start);
    const auto last = entry.find_last_not_of(" \t\r\n");
    std::string_view trimmed = entry.substr(first, last - first + 1);
    DivisorEntry d;
    if (trimmed == "R") {
      d.unit_ideal = true;
    } else {
      d.generator = parse_element_at(trimmed, ring, start + first);
      if (d.generator.is_zero()) {
        throw InvalidArgument("zero generator in divisor set at offset " + std::to_string(start + first) +
                              " (the zero ideal would create self-loops)");
      }
    }
    out.push_back(std::move(d));
    start = i + 1;
  }
  if (depth != 0) throw ParseError("unbalanced '('", text.size());
  return out;
}

std::string format_ring(const RingExpr& expr) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ZnExpr>) {
          return (n.field_spelling ? "F" : "Z") + std::to_string(n.modulus);
        } else if constexpr (std::is_same_v<T, PolyQuotientExpr>) {
          if (n.galois) return format_field(n.base.modulus, static_cast<unsigned>(n.modulus.size() - 1));
          return format_ring(RingExpr{n.base}) + "[" + n.variable + "]/(" + format_univariate(n.modulus, n.variable) + ")";
        } else if constexpr (std::is_same_v<T, TruncatedExpr>) {
          std::string vars, rels;
          for (std::size_t i = 0; i < n.variables.size(); ++i) {
            const auto& [v, e] = n.variables[i];
            if (i > 0) {
              vars += ",";
              rels += ",";
            }
            vars += v;
            rels += e == 1 ? v : v + "^" + std::to_string(e);
          }
          return format_field(n.prime, n.extension_degree) + "[" + vars + "]/(" + rels + ")";
        } else {
          std::string out;
          for (std::size_t i = 0; i < n.factors.size(); ++i) {
            if (i > 0) out += " x ";
            out += format_ring(n.factors[i]);
          }
          return out;
        }
      },
      expr.node);
}

nlohmann::json to_json(const RingExpr& expr) {
  return std::visit(
      [](const auto& n) -> nlohmann::json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ZnExpr>) {
          return {{"tag", "Zn"}, {"modulus", n.modulus}, {"field", n.field_spelling}};
        } else if constexpr (std::is_same_v<T, PolyQuotientExpr>) {
          return {{"tag", "PolyQuotient"},
                  {"base", to_json(RingExpr{n.base})},
                  {"variable", n.variable},
                  {"modulus", n.modulus},
                  {"galois", n.galois}};
        } else if constexpr (std::is_same_v<T, TruncatedExpr>) {
          nlohmann::json vars = nlohmann::json::array();
          for (const auto& [v, e] : n.variables) vars.push_back({{"name", v}, {"exponent", e}});
          return {{"tag", "TruncatedMultivar"},
                  {"prime", n.prime},
                  {"extension_degree", n.extension_degree},
                  {"variables", vars}};
        } else {
          nlohmann::json fs = nlohmann::json::array();
          for (const auto& f : n.factors) fs.push_back(to_json(f));
          return {{"tag", "Product"}, {"factors", fs}};
        }
      },
      expr.node);
}

RingExpr ring_from_json(const nlohmann::json& j) {
  RingExpr out;
  try {
    const std::string tag = j.at("tag").get<std::string>();
    if (tag == "Zn") {
      out = RingExpr{ZnExpr{j.at("modulus").get<std::uint64_t>(), j.value("field", false)}};
    } else if (tag == "PolyQuotient") {
      RingExpr base = ring_from_json(j.at("base"));
      const auto* z = std::get_if<ZnExpr>(&base.node);
      if (!z) throw InvalidArgument("PolyQuotient base must be Zn");
      out = RingExpr{PolyQuotientExpr{*z, j.at("variable").get<std::string>(),
                                      j.at("modulus").get<std::vector<std::int64_t>>(), j.value("galois", false)}};
    } else if (tag == "TruncatedMultivar") {
      TruncatedExpr t{j.at("prime").get<std::uint64_t>(), j.value("extension_degree", 1u), {}};
      for (const auto& v : j.at("variables")) {
        t.variables.emplace_back(v.at("name").get<std::string>(), v.at("exponent").get<unsigned>());
      }
      out = RingExpr{t};
    } else if (tag == "Product") {
      ProductExpr p;
      for (const auto& f : j.at("factors")) p.factors.push_back(ring_from_json(f));
      out = RingExpr{p};
    } else {
      throw InvalidArgument("unknown ring tag '" + tag + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed ring JSON: ") + e.what());
  }
  validate_ring(out);
  return out;
}

}  // namespace gcdpst
