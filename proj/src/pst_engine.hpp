#pragma once

// Exact perfect-state-transfer decisions on gcd-graphs.
//
// Times are kept as tau = t / (2*pi). For a target s the transfer condition
// between vertices r1, r2 reads
//   (lambda_{r1} - lambda_{r2}) tau + psi(s (r1 - r2)) / n  in Z.
// Taking r2 = 0 gives the one-sided constraints a_r tau + b_r / n in Z with
// a_r = lambda_r - lambda_0 and b_r = psi(s r). Every two-sided condition is the
// difference of the r1 and r2 one-sided ones (psi is additive), so the one-sided
// family is equivalent to the full one.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "duality.hpp"
#include "gcd_graph.hpp"
#include "ideal.hpp"
#include "json.hpp"
#include "spectra.hpp"

namespace gcdpst {

enum class WitnessKind {
  /// lambda_{r1} = lambda_{r2} but psi(s r1) != psi(s r2).
  EqualEigenvalue,
  /// a_{r1} u = -b_{r1} A (mod nA) has no solution.
  UnsolvableCongruence,
  /// The constraints of r1 and r2 are solvable separately but not jointly.
  InconsistentPair,
  /// No single pair conflicts, yet the whole system does; r2 is the last constraint added.
  InconsistentSystem,
  /// No nonzero element is orthogonal to the unit differences.
  NoCandidates,
};

std::string to_string(WitnessKind kind);

struct Witness {
  WitnessKind kind = WitnessKind::NoCandidates;
  Element target = 0;
  Element r1 = 0;
  Element r2 = 0;
  std::int64_t lambda1 = 0;
  std::int64_t lambda2 = 0;
};

struct PstVerdict {
  bool exists = false;
  Element target = 0;
  /// Minimal positive tau when `minimal` is set; otherwise some tau at which
  /// transfer is certified.
  Rational time;
  bool minimal = false;
  /// When present, the full time set is {time + k * period : k >= 0}.
  std::optional<Rational> period;
  std::optional<Witness> witness;
  std::size_t candidates_checked = 0;
};

/// tau lies in the verdict's certified time set.
bool in_time_set(const PstVerdict& v, const Rational& tau);

/// Evaluates a_r tau + b_r / n in Z for all r, for arbitrary targets at a fixed tau.
class TransferCriterion {
 public:
  TransferCriterion(const Ring& R, const Spectrum& spec, const Functional& psi, const Rational& tau);
  bool holds(Element s) const;
  /// The two-sided form for one pair (r1, r2).
  bool holds_pair(Element s, Element r1, Element r2) const;

 private:
  const Ring* ring_;
  const Spectrum* spec_;
  const Functional* psi_;
  BigInt num_, den_;
};

/// Additive subgroup generated by differences of units.
Subset delta_prime(const Ring& R);
/// Nonzero s with psi(s d) = 0 for all d in delta_prime. Asserts the result is
/// the set of nonzero sums of distinct minimal elements of the residue-F_2 factors.
std::vector<Element> candidate_targets(const Ring& R, const Functional& psi);

PstVerdict solve_pst(const GcdGraph& G, Element s, const Spectrum& spec, const Functional& psi);
PstVerdict has_pst(const GcdGraph& G, const Spectrum& spec, const Functional& psi);
PstVerdict has_pst(const GcdGraph& G);

/// Pst(e, tau = 1/4) when |D n Isoc^2(R)| is odd, nothing otherwise.
/// Requires R local with residue field F_2.
std::optional<PstVerdict> local_fast_path(const GcdGraph& G);
std::size_t isoc2_parity_count(const DivisorSet& D, const std::vector<Ideal>& isoc);

struct UnitaryClassification {
  bool pst = false;
  std::string explanation;
  /// Expected partner of 0 when pst holds.
  std::optional<Element> target;
};

UnitaryClassification classify_unitary(const Ring& R);

struct PolyClassification {
  bool pst = false;
  unsigned a = 0, b = 0;
  std::string explanation;
};

/// Unitary-graph PST over F_q[x]/(f), f monic with coefficients lowest first.
PolyClassification classify_unitary_poly(std::uint64_t q, const std::vector<std::int64_t>& f);

struct ScanOptions {
  std::size_t max_divisors = 3;
  std::size_t subset_cap = 1u << 20;
  unsigned jobs = 1;
};

struct ScanRow {
  std::vector<Element> generators;
  std::size_t parity_count = 0;
  PstVerdict verdict;
  bool fast_path_agrees = true;
  bool counterexample = false;
  /// Set for even parity without PST: some a in m has lambda_a = lambda_1.
  std::optional<bool> lambda1_in_m;
};

struct ScanReport {
  std::vector<ScanRow> rows;
  std::size_t odd = 0, pst = 0, counterexamples = 0, disagreements = 0;
};

/// Every divisor set of 1..max_divisors nonzero principal ideals of a local
/// ring with residue field F_2, in lexicographic order of ideal positions.
ScanReport scan_divisor_sets(const RingPtr& R, const ScanOptions& options);

nlohmann::json time_json(const Rational& tau);
nlohmann::json to_json(const Ring& R, const PstVerdict& v);
nlohmann::json to_json(const Ring& R, const ScanRow& row);
nlohmann::json to_json(const UnitaryClassification& c, const Ring& R);

}  // namespace gcdpst
