#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "ring.hpp"

namespace gcdpst {

/// Additive map R -> Z/n, stored as a table of residues by element index.
class Functional {
 public:
  Functional(std::uint64_t modulus, std::vector<std::uint64_t> values)
      : modulus_(modulus), values_(std::move(values)) {}

  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t operator()(Element a) const { return values_[a]; }
  const std::vector<std::uint64_t>& values() const { return values_; }

  /// x -> psi(u x).
  Functional twisted(const Ring& R, Element u) const;

  nlohmann::json to_json() const { return {{"n", modulus_}, {"values", values_}}; }

 private:
  std::uint64_t modulus_;
  std::vector<std::uint64_t> values_;
};

/// The canonical non-degenerate functional: per block, the coordinate of the
/// top basis monomial, combined over products as sum (n/n_i) psi_i.
/// Throws InternalError if the result is degenerate.
Functional build_psi(const Ring& R);

bool is_nondegenerate(const Functional& psi, const Ring& R);

/// The unique e with Ann(e) = m in a local ring with residue field F_2.
Element minimal_element(const Ring& R);

/// psi(e) == n/2 (mod n).
bool check_half_property(const Ring& R, const Functional& psi);

}  // namespace gcdpst
