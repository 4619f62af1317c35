#include "duality.hpp"

#include "error.hpp"
#include "ideal.hpp"

namespace gcdpst {

Functional Functional::twisted(const Ring& R, Element u) const {
  std::vector<std::uint64_t> v(R.order());
  for (Element a = 0; a < R.order(); ++a) v[a] = values_[R.mul(u, a)];
  return Functional(modulus_, std::move(v));
}

Functional build_psi(const Ring& R) {
  const std::uint64_t n = R.characteristic();
  std::vector<std::uint64_t> values(R.order(), 0);
  for (Element a = 0; a < R.order(); ++a) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < R.blocks().size(); ++i) {
      const Block& b = R.blocks()[i];
      const std::uint64_t digit = b.decode(R.block_component(a, i))[b.psi_coordinate];
      acc = (acc + (n / b.modulus) * digit) % n;
    }
    values[a] = acc;
  }
  Functional psi(n, std::move(values));
  if (!is_nondegenerate(psi, R)) throw InternalError("constructed functional is degenerate for " + R.description());
  return psi;
}

bool is_nondegenerate(const Functional& psi, const Ring& R) {
  for (Element a = 1; a < R.order(); ++a) {
    bool witnessed = false;
    for (Element b = 0; b < R.order() && !witnessed; ++b) witnessed = psi(R.mul(a, b)) != 0;
    if (!witnessed) return false;
  }
  return true;
}

Element minimal_element(const Ring& R) {
  if (!is_local(R)) throw PreconditionError("minimal element requires a local ring");
  if (R.order() != 2 * (R.order() - R.units().size())) {
    throw PreconditionError("minimal element is unique only when the residue field is F_2");
  }
  const Subset soc = socle_level(R, 1);
  if (soc.size() != 2) throw InternalError("socle of a local Frobenius ring with residue F_2 must be {0, e}");
  return soc.elements()[1];
}

bool check_half_property(const Ring& R, const Functional& psi) {
  const Element e = minimal_element(R);
  if (psi.modulus() % 2 != 0) throw InternalError("odd n for a ring with residue field F_2");
  return psi(e) == psi.modulus() / 2;
}

}  // namespace gcdpst
