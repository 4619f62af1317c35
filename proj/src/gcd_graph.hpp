#pragma once

#include <string>
#include <vector>

#include "ideal.hpp"
#include "json.hpp"
#include "ring.hpp"
#include "ring_dsl.hpp"

namespace gcdpst {

/// Distinct nonzero principal ideals, ordered by canonical generator.
struct DivisorSet {
  std::vector<Ideal> ideals;
  bool contains_unit_ideal = false;
  /// Only meaningful for local rings with residue field F_2.
  bool contains_minimal_ideal = false;

  std::vector<Element> generators() const;
};

DivisorSet make_divisor_set(const Ring& R, const DivisorExpr& expr);
DivisorSet make_divisor_set(const Ring& R, std::vector<Ideal> ideals);
DivisorSet make_divisor_set(const Ring& R, std::string_view text);

class GcdGraph {
 public:
  GcdGraph(RingPtr ring, DivisorSet divisors);

  const Ring& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  const DivisorSet& divisors() const { return divisors_; }
  /// S = {s : Rs in D}.
  const Subset& generating_set() const { return generating_set_; }
  std::size_t degree() const { return generating_set_.size(); }
  bool adjacent(Element a, Element b) const { return generating_set_.contains(ring_->sub(b, a)); }

 private:
  RingPtr ring_;
  DivisorSet divisors_;
  Subset generating_set_;
};

GcdGraph build_graph(RingPtr ring, DivisorSet divisors);
/// The unitary Cayley graph G_R({R}).
GcdGraph unitary_graph(RingPtr ring);

/// True iff uS = S for every unit u.
bool is_gcd_generating_set(const Ring& R, const Subset& S);

struct Components {
  std::vector<std::uint32_t> component_of;  // per element
  std::uint32_t count = 0;
  Subset subgroup;  // component of 0
};

/// Components are the cosets of the additive subgroup generated by S.
Components connected_components(const GcdGraph& G);

std::string edge_list_csv(const GcdGraph& G);
nlohmann::json to_json(const GcdGraph& G);

}  // namespace gcdpst
