#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "duality.hpp"
#include "gcd_graph.hpp"
#include "json.hpp"

namespace gcdpst {

/// Eigenvalue lambda_r of the gcd-graph for every element r (indexed by r).
struct Spectrum {
  std::vector<std::int64_t> values;

  std::int64_t operator[](Element r) const { return values[r]; }
  std::size_t size() const { return values.size(); }
  /// eigenvalue -> multiplicity
  std::map<std::int64_t, std::size_t> multiplicities() const;
  bool operator==(const Spectrum&) const = default;
};

/// Coefficients of a monic integer polynomial, lowest degree first.
struct CharPoly {
  std::vector<BigInt> coefficients;

  std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
  bool operator==(const CharPoly&) const = default;
  std::string to_string() const;
};

/// Overrides for the trivial-ring conventions. The defaults are the values the
/// brute-force computation produces and are the only correct ones; the hook
/// exists so negative-control tests can break them on purpose.
struct ArithmeticConventions {
  int trivial_ring_moebius = 1;
};

/// phi(R/Ann(y)) and mu(R/Ann(y)) for every y, computed on explicit quotient
/// rings and cached per distinct annihilator.
class RamanujanTable {
 public:
  explicit RamanujanTable(const Ring& R, const ArithmeticConventions& conventions = {});

  std::uint64_t phi_of_quotient(Element y) const { return phi_[y]; }
  int moebius_of_quotient(Element y) const { return mu_[y]; }
  /// c(r, Ann(x)) = phi(R/Ann(x)) / phi(R/Ann(rx)) * mu(R/Ann(rx)).
  std::int64_t ramanujan_sum(const Ring& R, Element r, Element x) const;

 private:
  std::vector<std::uint64_t> phi_;
  std::vector<int> mu_;
};

std::int64_t ramanujan_sum(const Ring& R, Element r, Element x);

Spectrum spectrum_closed_form(const GcdGraph& G, const RamanujanTable& table);
Spectrum spectrum_closed_form(const GcdGraph& G);
/// Floating-point character sum binned by residue; each value must lie within
/// 1e-6 of an integer.
Spectrum spectrum_character_sum(const GcdGraph& G, const Functional& psi);
/// Both routes; throws InternalError if they disagree.
Spectrum compute_spectrum(const GcdGraph& G, const Functional& psi, const RamanujanTable& table);
Spectrum compute_spectrum(const GcdGraph& G, const Functional& psi);

CharPoly char_poly(const Spectrum& spec);
/// Product form, eigenvalues in descending order: "(t - 9)(t - 1)^6(t + 1)^8(t + 7)".
std::string factored_char_poly(const Spectrum& spec);
CharPoly expand_factored(const std::vector<std::pair<std::int64_t, std::size_t>>& roots);

/// Per-element table grouped by eigenvalue (groups in order of first element).
nlohmann::json to_json(const Ring& R, const Spectrum& spec);

}  // namespace gcdpst
