#include "gcd_graph.hpp"

#include <algorithm>
#include <sstream>

#include "duality.hpp"
#include "error.hpp"

namespace gcdpst {

std::vector<Element> DivisorSet::generators() const {
  std::vector<Element> out;
  for (const auto& I : ideals) out.push_back(*I.generator);
  return out;
}

DivisorSet make_divisor_set(const Ring& R, std::vector<Ideal> ideals) {
  DivisorSet D;
  for (auto& I : ideals) {
    if (!I.generator) throw InvalidArgument("divisor sets contain principal ideals only");
    if (I.size() == 1) throw InvalidArgument("the zero ideal is not allowed in a divisor set (self-loops)");
    const bool dup = std::any_of(D.ideals.begin(), D.ideals.end(), [&](const Ideal& J) { return J == I; });
    if (!dup) D.ideals.push_back(std::move(I));
  }
  std::sort(D.ideals.begin(), D.ideals.end(), [](const Ideal& a, const Ideal& b) { return *a.generator < *b.generator; });
  D.contains_unit_ideal = std::any_of(D.ideals.begin(), D.ideals.end(), [&](const Ideal& I) { return I.size() == R.order(); });
  if (is_local(R) && R.order() == 2 * (R.order() - R.units().size())) {
    const Element e = minimal_element(R);
    D.contains_minimal_ideal = std::any_of(D.ideals.begin(), D.ideals.end(), [&](const Ideal& I) { return I.contains(e) && I.size() == 2; });
  }
  return D;
}

DivisorSet make_divisor_set(const Ring& R, const DivisorExpr& expr) {
  if (expr.empty()) throw InvalidArgument("divisor set is empty");
  std::vector<Ideal> ideals;
  for (const auto& entry : expr) {
    const Element g = entry.unit_ideal ? R.one() : R.element(entry.generator);
    if (g == 0) throw InvalidArgument("divisor generator '" + R.format(g) + "' is zero in the ring");
    ideals.push_back(principal_ideal(R, g));
  }
  return make_divisor_set(R, std::move(ideals));
}

DivisorSet make_divisor_set(const Ring& R, std::string_view text) {
  return make_divisor_set(R, parse_divisors(text, R.expr()));
}

GcdGraph::GcdGraph(RingPtr ring, DivisorSet divisors) : ring_(std::move(ring)), divisors_(std::move(divisors)) {
  const Ring& R = *ring_;
  std::vector<bool> bits(R.order(), false);
  // Rs = Rx iff s is an associate of x, so S is a union of unit orbits.
  for (const auto& I : divisors_.ideals) {
    if (I.size() == 1) throw InvalidArgument("the zero ideal is not allowed in a divisor set (self-loops)");
    for (Element u : R.units()) bits[R.mul(u, *I.generator)] = true;
  }
  generating_set_ = Subset(std::move(bits));
}

GcdGraph build_graph(RingPtr ring, DivisorSet divisors) { return GcdGraph(std::move(ring), std::move(divisors)); }

GcdGraph unitary_graph(RingPtr ring) {
  DivisorSet D = make_divisor_set(*ring, std::vector<Ideal>{principal_ideal(*ring, ring->one())});
  return GcdGraph(std::move(ring), std::move(D));
}

bool is_gcd_generating_set(const Ring& R, const Subset& S) {
  for (Element u : R.units()) {
    for (Element s : S.elements()) {
      if (!S.contains(R.mul(u, s))) return false;
    }
  }
  return true;
}

Components connected_components(const GcdGraph& G) {
  const Ring& R = G.ring();
  Components c;
  c.subgroup = additive_closure(R, G.generating_set().elements());
  c.component_of.assign(R.order(), UINT32_MAX);
  for (Element a = 0; a < R.order(); ++a) {
    if (c.component_of[a] != UINT32_MAX) continue;
    for (Element h : c.subgroup.elements()) c.component_of[R.add(a, h)] = c.count;
    ++c.count;
  }
  return c;
}

std::string edge_list_csv(const GcdGraph& G) {
  const Ring& R = G.ring();
  std::ostringstream out;
  out << "source,target\n";
  for (Element a = 0; a < R.order(); ++a) {
    for (Element s : G.generating_set().elements()) {
      const Element b = R.add(a, s);
      if (a < b) out << a << ',' << b << '\n';
    }
  }
  return out.str();
}

nlohmann::json to_json(const GcdGraph& G) {
  const Ring& R = G.ring();
  nlohmann::json gens = nlohmann::json::array();
  for (Element g : G.divisors().generators()) gens.push_back(R.is_unit(g) ? std::string("R") : R.format(g));
  return {{"ring", R.description()},
          {"divisors", gens},
          {"generating_set_size", G.degree()},
          {"degree", G.degree()},
          {"components", connected_components(G).count}};
}

}  // namespace gcdpst
