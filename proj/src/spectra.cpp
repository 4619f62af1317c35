#include "spectra.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "error.hpp"

namespace gcdpst {

std::map<std::int64_t, std::size_t> Spectrum::multiplicities() const {
  std::map<std::int64_t, std::size_t> out;
  for (std::int64_t v : values) ++out[v];
  return out;
}

namespace {

std::string term(const BigInt& c, std::size_t k, bool leading) {
  std::ostringstream os;
  BigInt mag = c < 0 ? BigInt(-c) : c;
  if (!leading) os << (c < 0 ? " - " : " + ");
  else if (c < 0) os << "-";
  if (k == 0 || mag != 1) os << mag;
  if (k > 0 && mag != 1) os << "*";
  if (k >= 1) os << "t";
  if (k >= 2) os << "^" << k;
  return os.str();
}

}  // namespace

std::string CharPoly::to_string() const {
  std::string out;
  for (std::size_t k = coefficients.size(); k-- > 0;) {
    if (coefficients[k] == 0) continue;
    out += term(coefficients[k], k, out.empty());
  }
  return out.empty() ? "0" : out;
}

RamanujanTable::RamanujanTable(const Ring& R, const ArithmeticConventions& conventions)
    : phi_(R.order()), mu_(R.order()) {
  std::unordered_map<std::vector<bool>, std::pair<std::uint64_t, int>> cache;
  for (Element y = 0; y < R.order(); ++y) {
    Subset ann = annihilator_set(R, y);
    auto it = cache.find(ann.bits());
    if (it == cache.end()) {
      QuotientRing Q(R, ann);
      int mu = Q.order() == 1 ? conventions.trivial_ring_moebius : moebius(Q);
      it = cache.emplace(ann.bits(), std::make_pair(euler_phi(Q), mu)).first;
    }
    phi_[y] = it->second.first;
    mu_[y] = it->second.second;
  }
}

std::int64_t RamanujanTable::ramanujan_sum(const Ring& R, Element r, Element x) const {
  Element rx = R.mul(r, x);
  if (mu_[rx] == 0) return 0;
  if (phi_[x] % phi_[rx] != 0)
    throw InternalError("phi(R/Ann(rx)) does not divide phi(R/Ann(x))");
  return static_cast<std::int64_t>(phi_[x] / phi_[rx]) * mu_[rx];
}

std::int64_t ramanujan_sum(const Ring& R, Element r, Element x) {
  QuotientRing Qx(R, annihilator_set(R, x));
  QuotientRing Qrx(R, annihilator_set(R, R.mul(r, x)));
  int mu = moebius(Qrx);
  if (mu == 0) return 0;
  std::uint64_t a = euler_phi(Qx), b = euler_phi(Qrx);
  if (a % b != 0) throw InternalError("phi(R/Ann(rx)) does not divide phi(R/Ann(x))");
  return static_cast<std::int64_t>(a / b) * mu;
}

Spectrum spectrum_closed_form(const GcdGraph& G, const RamanujanTable& table) {
  const Ring& R = G.ring();
  std::vector<Element> gens = G.divisors().generators();
  Spectrum spec;
  spec.values.assign(R.order(), 0);
  for (Element r = 0; r < R.order(); ++r) {
    std::int64_t sum = 0;
    for (Element x : gens) sum += table.ramanujan_sum(R, r, x);
    spec.values[r] = sum;
  }
  return spec;
}

Spectrum spectrum_closed_form(const GcdGraph& G) {
  return spectrum_closed_form(G, RamanujanTable(G.ring()));
}

Spectrum spectrum_character_sum(const GcdGraph& G, const Functional& psi) {
  const Ring& R = G.ring();
  const std::uint64_t n = psi.modulus();
  std::vector<double> re(n), im(n);
  for (std::uint64_t j = 0; j < n; ++j) {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    re[j] = std::cos(angle);
    im[j] = std::sin(angle);
  }
  const auto& S = G.generating_set().elements();
  std::vector<std::uint64_t> counts(n);
  Spectrum spec;
  spec.values.assign(R.order(), 0);
  for (Element r = 0; r < R.order(); ++r) {
    std::fill(counts.begin(), counts.end(), 0);
    for (Element s : S) ++counts[psi(R.mul(r, s))];
    double x = 0, y = 0;
    for (std::uint64_t j = 0; j < n; ++j) {
      if (counts[j] == 0) continue;
      x += static_cast<double>(counts[j]) * re[j];
      y += static_cast<double>(counts[j]) * im[j];
    }
    double rounded = std::round(x);
    if (std::abs(y) > 1e-6 || std::abs(x - rounded) > 1e-6)
      throw InternalError("character sum at " + R.format(r) + " is not an integer");
    spec.values[r] = static_cast<std::int64_t>(rounded);
  }
  return spec;
}

Spectrum compute_spectrum(const GcdGraph& G, const Functional& psi, const RamanujanTable& table) {
  Spectrum closed = spectrum_closed_form(G, table);
  Spectrum chars = spectrum_character_sum(G, psi);
  for (Element r = 0; r < closed.size(); ++r) {
    if (closed[r] != chars[r])
      throw InternalError("spectrum routes disagree at " + G.ring().format(r) + ": " +
                          std::to_string(closed[r]) + " vs " + std::to_string(chars[r]));
  }
  return closed;
}

Spectrum compute_spectrum(const GcdGraph& G, const Functional& psi) {
  return compute_spectrum(G, psi, RamanujanTable(G.ring()));
}

CharPoly expand_factored(const std::vector<std::pair<std::int64_t, std::size_t>>& roots) {
  std::vector<BigInt> c{1};
  for (const auto& [root, mult] : roots) {
    for (std::size_t m = 0; m < mult; ++m) {
      std::vector<BigInt> next(c.size() + 1);
      for (std::size_t k = 0; k < c.size(); ++k) {
        next[k + 1] += c[k];
        next[k] -= c[k] * root;
      }
      c = std::move(next);
    }
  }
  return CharPoly{std::move(c)};
}

CharPoly char_poly(const Spectrum& spec) {
  auto mult = spec.multiplicities();
  return expand_factored({mult.begin(), mult.end()});
}

std::string factored_char_poly(const Spectrum& spec) {
  auto mult = spec.multiplicities();
  std::string out;
  for (auto it = mult.rbegin(); it != mult.rend(); ++it) {
    auto [root, m] = *it;
    if (root == 0) out += "t";
    if (root > 0) out += "(t - " + std::to_string(root) + ")";
    if (root < 0) out += "(t + " + std::to_string(-root) + ")";
    if (m > 1) out += "^" + std::to_string(m);
  }
  return out;
}

nlohmann::json to_json(const Ring& R, const Spectrum& spec) {
  using nlohmann::json;
  json groups = json::array();
  std::map<std::int64_t, std::size_t> slot;
  json per_element = json::array();
  for (Element r = 0; r < spec.size(); ++r) {
    auto [it, fresh] = slot.emplace(spec[r], groups.size());
    if (fresh) groups.push_back({{"eigenvalue", spec[r]}, {"elements", json::array()}});
    groups[it->second]["elements"].push_back(R.format(r));
    per_element.push_back({{"element", R.format(r)}, {"index", r}, {"eigenvalue", spec[r]}});
  }
  for (auto& g : groups) g["multiplicity"] = g["elements"].size();
  json coeffs = json::array();
  for (const auto& c : char_poly(spec).coefficients) coeffs.push_back(big_to_json(c));
  return {{"ring", R.description()},
          {"order", R.order()},
          {"groups", groups},
          {"per_element", per_element},
          {"char_poly", {{"factored", factored_char_poly(spec)}, {"coefficients", coeffs}}}};
}

}  // namespace gcdpst
