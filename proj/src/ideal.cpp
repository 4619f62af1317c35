#include "ideal.hpp"

#include <algorithm>
#include <bit>

#include "error.hpp"

namespace gcdpst {

Subset::Subset(std::uint32_t universe, const std::vector<Element>& members) : bits_(universe, false) {
  for (auto a : members) bits_[a] = true;
  for (Element a = 0; a < universe; ++a) {
    if (bits_[a]) items_.push_back(a);
  }
}

Subset::Subset(std::vector<bool> bits) : bits_(std::move(bits)) {
  for (Element a = 0; a < bits_.size(); ++a) {
    if (bits_[a]) items_.push_back(a);
  }
}

bool Subset::is_subset_of(const Subset& other) const {
  return std::all_of(items_.begin(), items_.end(), [&](Element a) { return other.contains(a); });
}

Subset additive_closure(const Ring& R, const std::vector<Element>& generators) {
  std::vector<bool> seen(R.order(), false);
  std::vector<Element> frontier{0};
  seen[0] = true;
  // Breadth-first walk of the Cayley graph of (R, +) on the generators; in a
  // finite group the reachable set is the generated subgroup.
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (Element a : frontier) {
      for (Element g : generators) {
        const Element b = R.add(a, g);
        if (!seen[b]) {
          seen[b] = true;
          next.push_back(b);
        }
      }
    }
    frontier = std::move(next);
  }
  return Subset(std::move(seen));
}

Ideal make_ideal(const Ring& R, Subset members) {
  Ideal I{std::move(members), std::nullopt};
  std::vector<bool> mark(R.order(), false);
  for (Element g : I.members.elements()) {
    std::fill(mark.begin(), mark.end(), false);
    std::size_t count = 0;
    for (Element r = 0; r < R.order(); ++r) {
      const Element x = R.mul(r, g);
      if (!mark[x]) {
        mark[x] = true;
        ++count;
      }
    }
    if (count == I.size()) {
      I.generator = g;
      break;
    }
  }
  return I;
}

Subset principal_ideal_set(const Ring& R, Element a) {
  std::vector<bool> bits(R.order(), false);
  for (Element r = 0; r < R.order(); ++r) bits[R.mul(r, a)] = true;
  return Subset(std::move(bits));
}

Ideal principal_ideal(const Ring& R, Element a) {
  // Generators of Ra are exactly the associates ua.
  Element best = a;
  for (Element u : R.units()) best = std::min(best, R.mul(u, a));
  return Ideal{principal_ideal_set(R, a), best};
}

Subset annihilator_set(const Ring& R, Element a) {
  std::vector<bool> bits(R.order(), false);
  for (Element x = 0; x < R.order(); ++x) bits[x] = R.mul(x, a) == 0;
  return Subset(std::move(bits));
}

Ideal annihilator(const Ring& R, Element a) { return make_ideal(R, annihilator_set(R, a)); }

Subset annihilator_of_set(const Ring& R, const Subset& S) {
  std::vector<bool> bits(R.order(), false);
  for (Element x = 0; x < R.order(); ++x) {
    bits[x] = std::all_of(S.elements().begin(), S.elements().end(), [&](Element s) { return R.mul(x, s) == 0; });
  }
  return Subset(std::move(bits));
}

Ideal annihilator_of_ideal(const Ring& R, const Ideal& I) {
  if (I.generator) return annihilator(R, *I.generator);
  return make_ideal(R, annihilator_of_set(R, I.members));
}

bool is_nilpotent(const Ring& R, Element a) {
  // The nilpotency index never exceeds |R|.
  Element x = a;
  for (std::uint64_t e = 1;; e *= 2) {
    if (x == 0) return true;
    if (e >= R.order()) return false;
    x = R.mul(x, x);
  }
}

Ideal jacobson_radical(const Ring& R) {
  std::vector<bool> bits(R.order(), false);
  for (Element a = 0; a < R.order(); ++a) bits[a] = is_nilpotent(R, a);
  return make_ideal(R, Subset(std::move(bits)));
}

std::vector<Ideal> nonzero_principal_ideals(const Ring& R) {
  std::vector<Ideal> out;
  for (Element a = 1; a < R.order(); ++a) {
    bool canonical = true;
    for (Element u : R.units()) {
      if (R.mul(u, a) < a) {
        canonical = false;
        break;
      }
    }
    if (canonical) out.push_back(Ideal{principal_ideal_set(R, a), a});
  }
  return out;
}

namespace {

std::vector<Element> idempotents(const Ring& R) {
  std::vector<Element> out;
  for (Element a = 0; a < R.order(); ++a) {
    if (R.mul(a, a) == a) out.push_back(a);
  }
  return out;
}

Subset maximal_ideal_of_local(const Ring& R) {
  std::vector<bool> bits(R.order(), false);
  for (Element a = 0; a < R.order(); ++a) bits[a] = !R.is_unit(a);
  return Subset(std::move(bits));
}

}  // namespace

bool is_local(const Ring& R) { return idempotents(R).size() == 2; }

Subset socle_level(const Ring& R, unsigned k) {
  if (k == 0) throw InvalidArgument("socle level must be >= 1");
  if (k == 1) return annihilator_of_set(R, jacobson_radical(R).members);
  if (!is_local(R)) throw PreconditionError("soc^k for k >= 2 requires a local ring");
  const Subset m = maximal_ideal_of_local(R);
  Subset level(R.order(), {0});
  for (unsigned j = 1; j <= k; ++j) {
    std::vector<bool> bits(R.order(), false);
    for (Element a = 0; a < R.order(); ++a) {
      bits[a] = std::all_of(m.elements().begin(), m.elements().end(),
                            [&](Element x) { return level.contains(R.mul(x, a)); });
    }
    level = Subset(std::move(bits));
  }
  return level;
}

std::vector<Ideal> isoc2(const Ring& R) {
  if (!is_local(R)) throw PreconditionError("Isoc^2 requires a local ring");
  if (R.order() != 2 * maximal_ideal_of_local(R).size()) throw PreconditionError("Isoc^2 requires residue field F_2");
  const Subset soc2 = socle_level(R, 2);
  std::vector<Ideal> out;
  for (Element a : soc2.elements()) {
    if (a == 0) continue;
    Ideal I = principal_ideal(R, a);
    if (*I.generator == a) out.push_back(std::move(I));
  }
  return out;
}

QuotientRing::QuotientRing(const Ring& parent, Subset ideal)
    : parent_(&parent), ideal_(std::move(ideal)), coset_of_(parent.order(), UINT32_MAX) {
  for (Element a = 0; a < parent.order(); ++a) {
    if (coset_of_[a] != UINT32_MAX) continue;
    const auto c = static_cast<std::uint32_t>(representatives_.size());
    representatives_.push_back(a);
    for (Element i : ideal_.elements()) coset_of_[parent.add(a, i)] = c;
  }
}

std::uint32_t QuotientRing::add(std::uint32_t a, std::uint32_t b) const {
  return coset_of_[parent_->add(representatives_[a], representatives_[b])];
}

std::uint32_t QuotientRing::mul(std::uint32_t a, std::uint32_t b) const {
  return coset_of_[parent_->mul(representatives_[a], representatives_[b])];
}

QuotientRing quotient(const Ring& R, const Ideal& I) { return QuotientRing(R, I.members); }

std::uint64_t euler_phi(const QuotientRing& Q) {
  const std::uint32_t n = Q.order();
  const std::uint32_t one = Q.one();
  std::vector<bool> unit(n, false);
  for (std::uint32_t c = 0; c < n; ++c) {
    if (unit[c]) continue;
    for (std::uint32_t d = 0; d < n; ++d) {
      if (Q.mul(c, d) == one) {
        unit[c] = unit[d] = true;
        break;
      }
    }
  }
  return static_cast<std::uint64_t>(std::count(unit.begin(), unit.end(), true));
}

int moebius(const QuotientRing& Q) {
  const std::uint32_t n = Q.order();
  for (std::uint32_t c = 1; c < n; ++c) {
    std::uint32_t x = c;
    for (std::uint64_t e = 1; e < n; e *= 2) x = Q.mul(x, x);
    if (x == 0) return 0;
  }
  std::uint32_t count = 0;
  for (std::uint32_t c = 0; c < n; ++c) {
    if (Q.mul(c, c) == c) ++count;
  }
  // Reduced finite rings are products of k fields and have 2^k idempotents.
  const int k = std::countr_zero(count);
  return k % 2 == 0 ? 1 : -1;
}

LocalFactorization local_decomposition(const Ring& R) {
  const auto idem = idempotents(R);
  LocalFactorization out;
  for (Element e : idem) {
    if (e == 0) continue;
    bool primitive = true;
    for (Element f : idem) {
      if (f != 0 && f != e && R.mul(e, f) == f) {
        primitive = false;
        break;
      }
    }
    if (!primitive) continue;
    LocalFactor lf;
    lf.idempotent = e;
    std::vector<bool> bits(R.order(), false);
    for (Element r = 0; r < R.order(); ++r) bits[R.mul(e, r)] = true;
    lf.elements = Subset(std::move(bits));
    lf.order = static_cast<std::uint32_t>(lf.elements.size());
    std::vector<Element> radical;
    for (Element a : lf.elements.elements()) {
      if (is_nilpotent(R, a)) radical.push_back(a);
    }
    lf.residue_field_order = lf.order / static_cast<std::uint32_t>(radical.size());
    lf.residue_is_f2 = lf.residue_field_order == 2;
    if (lf.residue_is_f2) {
      std::vector<Element> socle;
      for (Element a : lf.elements.elements()) {
        if (a == 0) continue;
        if (std::all_of(radical.begin(), radical.end(), [&](Element y) { return R.mul(y, a) == 0; })) socle.push_back(a);
      }
      if (socle.size() != 1) throw InternalError("local factor with residue field F_2 has a non-simple socle");
      lf.minimal_element = socle[0];
    }
    out.factors.push_back(std::move(lf));
  }
  return out;
}

nlohmann::json to_json(const Ring& R, const Ideal& I) {
  nlohmann::json elems = nlohmann::json::array();
  for (Element a : I.members.elements()) elems.push_back(R.format(a));
  nlohmann::json j{{"size", I.size()}, {"elements", elems}};
  if (I.generator) {
    j["generator"] = R.format(*I.generator);
    j["generator_index"] = *I.generator;
  } else {
    j["generator"] = nullptr;
    j["generator_index"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(const Ring& R, const LocalFactorization& f) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& lf : f.factors) {
    arr.push_back({{"idempotent", R.format(lf.idempotent)},
                   {"order", lf.order},
                   {"residue_field_order", lf.residue_field_order},
                   {"residue_is_f2", lf.residue_is_f2},
                   {"minimal_element", lf.minimal_element ? nlohmann::json(R.format(*lf.minimal_element)) : nlohmann::json()}});
  }
  return arr;
}

}  // namespace gcdpst
