#pragma once

// Ideals, annihilators, socles, quotients and the local decomposition of a
// finite commutative ring. Everything here is computed by exhaustive scans
// over element indices, which is the intended regime (|R| in the thousands).

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "ring.hpp"

namespace gcdpst {

/// A set of ring elements with O(1) membership and a sorted member list.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::uint32_t universe) : bits_(universe, false) {}
  Subset(std::uint32_t universe, const std::vector<Element>& members);
  explicit Subset(std::vector<bool> bits);

  bool contains(Element a) const { return bits_[a]; }
  std::size_t size() const { return items_.size(); }
  std::uint32_t universe() const { return static_cast<std::uint32_t>(bits_.size()); }
  /// Members in increasing index order.
  const std::vector<Element>& elements() const { return items_; }
  const std::vector<bool>& bits() const { return bits_; }
  bool is_subset_of(const Subset& other) const;

  bool operator==(const Subset& other) const { return bits_ == other.bits_; }

 private:
  std::vector<bool> bits_;
  std::vector<Element> items_;
};

/// Additive subgroup generated by `generators`.
Subset additive_closure(const Ring& R, const std::vector<Element>& generators);

struct Ideal {
  Subset members;
  /// Least element index g with Rg equal to this ideal; empty if not principal.
  std::optional<Element> generator;

  std::size_t size() const { return members.size(); }
  bool contains(Element a) const { return members.contains(a); }
  bool operator==(const Ideal& other) const { return members == other.members; }
};

/// Wraps an element set already known to be an ideal and finds its canonical generator.
Ideal make_ideal(const Ring& R, Subset members);

Ideal principal_ideal(const Ring& R, Element a);
Subset principal_ideal_set(const Ring& R, Element a);
Ideal annihilator(const Ring& R, Element a);
Subset annihilator_set(const Ring& R, Element a);
Ideal annihilator_of_ideal(const Ring& R, const Ideal& I);
Subset annihilator_of_set(const Ring& R, const Subset& S);
/// Nilpotent elements (equal to J(R) for finite commutative rings).
Ideal jacobson_radical(const Ring& R);
bool is_nilpotent(const Ring& R, Element a);
/// All distinct nonzero principal ideals, ordered by canonical generator.
std::vector<Ideal> nonzero_principal_ideals(const Ring& R);

bool is_local(const Ring& R);
/// soc^k(R). k >= 2 requires R local.
Subset socle_level(const Ring& R, unsigned k);
/// Distinct ideals Ra for nonzero a in soc^2(R). R local with residue field F_2.
std::vector<Ideal> isoc2(const Ring& R);

/// R/I realized on coset indices 0..|R/I|-1 (coset 0 is I itself).
class QuotientRing {
 public:
  QuotientRing(const Ring& parent, Subset ideal);

  std::uint32_t order() const { return static_cast<std::uint32_t>(representatives_.size()); }
  std::uint32_t coset_of(Element a) const { return coset_of_[a]; }
  Element representative(std::uint32_t c) const { return representatives_[c]; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t one() const { return coset_of_[parent_->one()]; }
  const Subset& ideal() const { return ideal_; }

 private:
  const Ring* parent_;
  Subset ideal_;
  std::vector<Element> representatives_;
  std::vector<std::uint32_t> coset_of_;
};

QuotientRing quotient(const Ring& R, const Ideal& I);

/// Number of units. The trivial ring has one element, which is a unit.
std::uint64_t euler_phi(const QuotientRing& Q);
/// 0 if Q has a nonzero nilpotent, else (-1)^k for Q a product of k fields.
int moebius(const QuotientRing& Q);

struct LocalFactor {
  Element idempotent;
  Subset elements;  // e_i R
  std::uint32_t order;
  std::uint32_t residue_field_order;
  bool residue_is_f2;
  std::optional<Element> minimal_element;  // set when residue_is_f2
};

struct LocalFactorization {
  std::vector<LocalFactor> factors;  // sorted by idempotent index
};

LocalFactorization local_decomposition(const Ring& R);

nlohmann::json to_json(const Ring& R, const Ideal& I);
nlohmann::json to_json(const Ring& R, const LocalFactorization& f);

}  // namespace gcdpst
