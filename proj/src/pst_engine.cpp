#include "pst_engine.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <numbers>
#include <thread>

#include "error.hpp"
#include "numtheory.hpp"

namespace gcdpst {

namespace {

BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

// Inverse of a modulo m; a and m coprime, m >= 1.
BigInt inverse_mod(const BigInt& a, const BigInt& m) {
  if (m == 1) return 0;
  BigInt old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw InternalError("modular inverse of a non-unit");
  return mod(old_s, m);
}

struct Congruence {
  BigInt u;  // u (mod M)
  BigInt M;
  Element r;
};

bool merge(BigInt& u, BigInt& M, const BigInt& v, const BigInt& K) {
  BigInt g = gcd(M, K);
  BigInt diff = v - u;
  if (diff % g != 0) return false;
  BigInt Kg = K / g;
  BigInt t = mod((diff / g) * inverse_mod(M / g, Kg), Kg);
  u = u + M * t;
  M = M * Kg;
  u = mod(u, M);
  return true;
}

bool compatible(const Congruence& x, const Congruence& y) {
  BigInt u = x.u, M = x.M;
  return merge(u, M, y.u, y.M);
}

PstVerdict no_pst(WitnessKind kind, Element s, Element r1, Element r2, const Spectrum& spec) {
  PstVerdict v;
  v.target = s;
  v.witness = Witness{kind, s, r1, r2, spec[r1], spec[r2]};
  return v;
}

}  // namespace

std::string to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::EqualEigenvalue: return "equal_eigenvalue";
    case WitnessKind::UnsolvableCongruence: return "unsolvable_congruence";
    case WitnessKind::InconsistentPair: return "inconsistent_pair";
    case WitnessKind::InconsistentSystem: return "inconsistent_system";
    case WitnessKind::NoCandidates: return "no_candidates";
  }
  return "unknown";
}

bool in_time_set(const PstVerdict& v, const Rational& tau) {
  if (!v.exists) return false;
  if (tau == v.time) return true;
  if (!v.period) return false;
  Rational k = (tau - v.time) / *v.period;
  return k > 0 && denominator(k) == 1;
}

TransferCriterion::TransferCriterion(const Ring& R, const Spectrum& spec, const Functional& psi,
                                     const Rational& tau)
    : ring_(&R), spec_(&spec), psi_(&psi), num_(numerator(tau)), den_(denominator(tau)) {}

// a tau + b / n in Z  <=>  a * num * n + b * den = 0 (mod den * n)
bool TransferCriterion::holds(Element s) const {
  const BigInt n = psi_->modulus();
  const BigInt q = den_ * n;
  const std::int64_t l0 = (*spec_)[0];
  for (Element r = 0; r < ring_->order(); ++r) {
    BigInt lhs = BigInt((*spec_)[r] - l0) * num_ * n + BigInt((*psi_)(ring_->mul(s, r))) * den_;
    if (lhs % q != 0) return false;
  }
  return true;
}

bool TransferCriterion::holds_pair(Element s, Element r1, Element r2) const {
  const BigInt n = psi_->modulus();
  BigInt a = (*spec_)[r1] - (*spec_)[r2];
  BigInt b = (*psi_)(ring_->mul(s, ring_->sub(r1, r2)));
  return (a * num_ * n + b * den_) % (den_ * n) == 0;
}

// Differences u1 - u2 generate the same group as u - 1.
Subset delta_prime(const Ring& R) {
  std::vector<Element> gens;
  for (Element u : R.units()) gens.push_back(R.sub(u, R.one()));
  return additive_closure(R, gens);
}

std::vector<Element> candidate_targets(const Ring& R, const Functional& psi) {
  std::vector<Element> gens;
  for (Element u : R.units()) gens.push_back(R.sub(u, R.one()));
  std::vector<Element> out;
  for (Element s = 1; s < R.order(); ++s) {
    bool ok = std::all_of(gens.begin(), gens.end(), [&](Element d) { return psi(R.mul(s, d)) == 0; });
    if (ok) out.push_back(s);
  }

  std::vector<Element> minimal;
  for (const auto& f : local_decomposition(R).factors)
    if (f.residue_is_f2) minimal.push_back(*f.minimal_element);
  std::vector<Element> expected;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << minimal.size()); ++mask) {
    Element s = 0;
    for (std::size_t i = 0; i < minimal.size(); ++i)
      if (mask >> i & 1) s = R.add(s, minimal[i]);
    expected.push_back(s);
  }
  std::sort(expected.begin(), expected.end());
  if (expected != out) throw InternalError("candidate targets do not match the local factor decomposition");
  return out;
}

PstVerdict solve_pst(const GcdGraph& G, Element s, const Spectrum& spec, const Functional& psi) {
  const Ring& R = G.ring();
  if (s == 0 || s >= R.order()) throw InvalidArgument("target must be a nonzero element of the ring");
  const std::uint64_t n = psi.modulus();

  std::map<std::int64_t, Element> first;
  std::vector<Element> reps;
  for (Element r = 0; r < R.order(); ++r) {
    auto [it, fresh] = first.emplace(spec[r], r);
    if (fresh) {
      reps.push_back(r);
    } else if (psi(R.mul(s, r)) != psi(R.mul(s, it->second))) {
      return no_pst(WitnessKind::EqualEigenvalue, s, it->second, r, spec);
    }
  }

  BigInt A = 1;
  for (Element r : reps) {
    std::int64_t a = spec[r] - spec[0];
    if (a != 0) A = lcm(A, BigInt(a < 0 ? -a : a));
  }
  const BigInt N = A * n;

  std::vector<Congruence> singles;
  for (Element r : reps) {
    std::int64_t a = spec[r] - spec[0];
    if (a == 0) continue;  // r = 0: psi(0) = 0 already holds
    BigInt aa = mod(a, N);
    BigInt c = mod(-BigInt(psi(R.mul(s, r))) * A, N);
    BigInt g = gcd(aa, N);
    if (c % g != 0) return no_pst(WitnessKind::UnsolvableCongruence, s, r, r, spec);
    BigInt Mg = N / g;
    singles.push_back({mod((c / g) * inverse_mod(aa / g, Mg), Mg), Mg, r});
  }
  if (singles.empty()) throw InternalError("nonzero target satisfies no eigenvalue constraint");

  BigInt u = 0, M = 1;
  for (std::size_t i = 0; i < singles.size(); ++i) {
    if (merge(u, M, singles[i].u, singles[i].M)) continue;
    for (std::size_t j = 0; j < i; ++j)
      if (!compatible(singles[j], singles[i]))
        return no_pst(WitnessKind::InconsistentPair, s, singles[j].r, singles[i].r, spec);
    return no_pst(WitnessKind::InconsistentSystem, s, singles[i].r, singles[i].r, spec);
  }
  if (u == 0) u = M;

  PstVerdict v;
  v.exists = true;
  v.target = s;
  v.time = Rational(u, N);
  v.period = Rational(M, N);
  v.minimal = true;
  return v;
}

PstVerdict has_pst(const GcdGraph& G, const Spectrum& spec, const Functional& psi) {
  const Ring& R = G.ring();
  std::vector<Element> cands = candidate_targets(R, psi);
  if (cands.empty()) return no_pst(WitnessKind::NoCandidates, 0, 0, 0, spec);

  std::optional<PstVerdict> first_failure;
  std::size_t checked = 0;
  for (Element s : cands) {
    PstVerdict v = solve_pst(G, s, spec, psi);
    ++checked;
    if (v.exists) {
      TransferCriterion crit(R, spec, psi, v.time);
      for (Element other = 0; other < R.order(); ++other)
        if (other != s && crit.holds(other))
          throw InternalError("two transfer partners of 0 at the same time");
      v.candidates_checked = checked;
      return v;
    }
    if (!first_failure) first_failure = v;
  }
  first_failure->candidates_checked = checked;
  return *first_failure;
}

PstVerdict has_pst(const GcdGraph& G) {
  Functional psi = build_psi(G.ring());
  return has_pst(G, compute_spectrum(G, psi), psi);
}

std::size_t isoc2_parity_count(const DivisorSet& D, const std::vector<Ideal>& isoc) {
  std::size_t count = 0;
  for (const Ideal& I : D.ideals)
    if (std::find(isoc.begin(), isoc.end(), I) != isoc.end()) ++count;
  return count;
}

std::optional<PstVerdict> local_fast_path(const GcdGraph& G) {
  const Ring& R = G.ring();
  Element e = minimal_element(R);
  if (isoc2_parity_count(G.divisors(), isoc2(R)) % 2 == 0) return std::nullopt;
  PstVerdict v;
  v.exists = true;
  v.target = e;
  v.time = Rational(1, 4);
  return v;
}

UnitaryClassification classify_unitary(const Ring& R) {
  LocalFactorization dec = local_decomposition(R);
  std::vector<const LocalFactor*> f2, thick, others;
  for (const auto& f : dec.factors) {
    if (!f.residue_is_f2) others.push_back(&f);
    else if (f.order == 2) f2.push_back(&f);
    else thick.push_back(&f);
  }
  UnitaryClassification c;
  if (f2.empty() && thick.empty()) {
    c.explanation = "no local factor has residue field F_2";
    return c;
  }
  if (thick.size() > 1) {
    c.explanation = "more than one local factor with residue field F_2 is not a field";
    return c;
  }
  Element target = 0;
  if (!thick.empty()) {
    if (thick[0]->order != 4) {
      c.explanation = "the residue-F_2 factor has order " + std::to_string(thick[0]->order) +
                      "; only F_2, Z/4 and F_2[x]/(x^2) allow transfer";
      return c;
    }
    target = *thick[0]->minimal_element;
  } else {
    // Extra F_2 factors only split the graph into isomorphic components; the
    // partner of 0 inside its own component has a 1 in every F_2 slot.
    for (const auto* f : f2) target = R.add(target, f->idempotent);
  }
  for (const auto* f : others) {
    if (f->order != f->residue_field_order) {
      c.explanation = "a local factor with residue field F_" + std::to_string(f->residue_field_order) +
                      " is not a field";
      return c;
    }
    if (f->order % 4 != 0) {
      c.explanation = "field factor F_" + std::to_string(f->order) + " has order not divisible by 4";
      return c;
    }
  }
  c.pst = true;
  c.target = target;
  c.explanation = thick.empty() ? "residue-F_2 part is F_2" : "residue-F_2 part has order 4";
  if (!others.empty()) c.explanation += "; all other factors are fields of order divisible by 4";
  return c;
}

PolyClassification classify_unitary_poly(std::uint64_t q, const std::vector<std::int64_t>& f) {
  using namespace polymod;
  auto pp = prime_power(q);
  if (!pp) throw InvalidArgument(std::to_string(q) + " is not a prime power");
  Poly g = reduce(f, static_cast<std::int64_t>(pp->first));
  if (degree(g) < 1) throw InvalidArgument("modulus must have degree at least 1");
  if (f.empty() || floor_mod(f.back(), static_cast<std::int64_t>(pp->first)) != 1 ||
      degree(g) + 1 != static_cast<int>(f.size()))
    throw InvalidArgument("modulus must be monic");
  PolyClassification c;
  if (q != 2) {
    c.explanation = "q = " + std::to_string(q) + " is not 2";
    return c;
  }
  const Poly x{0, 1}, x1{1, 1};
  while (degree(g) >= 1 && g[0] == 0) {
    g = divmod_field(g, x, 2).first;
    ++c.a;
  }
  while (true) {
    auto [quo, rem] = divmod_field(g, x1, 2);
    if (degree(rem) >= 0) break;
    g = quo;
    ++c.b;
  }
  if (degree(g) > 0 && degree(gcd_field(g, derivative(g, 2), 2)) > 0) {
    c.explanation = "the part coprime to x(x+1) is not squarefree";
    return c;
  }
  unsigned hi = std::max(c.a, c.b);
  if (hi < 1 || hi > 2) {
    c.explanation = "max(a, b) = " + std::to_string(hi) + " is outside [1, 2]";
    return c;
  }
  if (c.a == 2 && c.b == 2) {
    c.explanation = "(a, b) = (2, 2)";
    return c;
  }
  c.pst = true;
  c.explanation = "(a, b) = (" + std::to_string(c.a) + ", " + std::to_string(c.b) + ")";
  return c;
}

ScanReport scan_divisor_sets(const RingPtr& ring, const ScanOptions& options) {
  const Ring& R = *ring;
  if (!is_local(R) || R.order() != 2 * (R.order() - R.units().size()))
    throw PreconditionError("scan needs a local ring with residue field F_2");
  const Element e = minimal_element(R);
  const std::vector<Ideal> principal = nonzero_principal_ideals(R);
  const std::vector<Ideal> isoc = isoc2(R);
  const Subset m = jacobson_radical(R).members;
  const Functional psi = build_psi(R);
  const RamanujanTable table(R);

  const std::size_t p = principal.size();
  const std::size_t kmax = std::min(options.max_divisors, p);
  std::size_t total = 0;
  for (std::size_t k = 1; k <= kmax; ++k) {
    std::uint64_t binom = 1;
    for (std::size_t i = 0; i < k; ++i) binom = binom * (p - i) / (i + 1);
    total += binom;
    if (total > options.subset_cap)
      throw ResourceCapError("more than " + std::to_string(options.subset_cap) + " divisor sets");
  }

  std::vector<std::vector<std::size_t>> combos;
  combos.reserve(total);
  for (std::size_t k = 1; k <= kmax; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      combos.push_back(idx);
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == p - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

  std::vector<ScanRow> rows(combos.size());
  auto work = [&](std::size_t index) {
    std::vector<Ideal> chosen;
    for (std::size_t i : combos[index]) chosen.push_back(principal[i]);
    GcdGraph G(ring, make_divisor_set(R, std::move(chosen)));
    Spectrum spec = compute_spectrum(G, psi, table);
    ScanRow row;
    row.generators = G.divisors().generators();
    row.parity_count = isoc2_parity_count(G.divisors(), isoc);
    row.verdict = solve_pst(G, e, spec, psi);
    bool odd = row.parity_count % 2 == 1;
    if (odd) row.fast_path_agrees = row.verdict.exists && in_time_set(row.verdict, Rational(1, 4));
    row.counterexample = !odd && row.verdict.exists;
    if (!odd && !row.verdict.exists) {
      bool found = false;
      for (Element a : m.elements())
        if (a != 0 && spec[a] == spec[R.one()]) found = true;
      row.lambda1_in_m = found;
    }
    rows[index] = std::move(row);
  };

  const unsigned jobs = std::max(1u, options.jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < jobs; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < combos.size(); i += jobs) work(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);

  ScanReport report;
  for (auto& row : rows) {
    report.odd += row.parity_count % 2;
    report.pst += row.verdict.exists;
    report.counterexamples += row.counterexample;
    report.disagreements += !row.fast_path_agrees;
  }
  report.rows = std::move(rows);
  return report;
}

nlohmann::json time_json(const Rational& tau) {
  return {{"num", big_to_json(numerator(tau))},
          {"den", big_to_json(denominator(tau))},
          {"of", "2*pi"},
          {"radians", static_cast<double>(tau) * 2.0 * std::numbers::pi}};
}

nlohmann::json to_json(const Ring& R, const PstVerdict& v) {
  using nlohmann::json;
  json out;
  out["verdict"] = v.exists ? "pst" : "no_pst";
  out["target"] = v.exists ? json(R.format(v.target)) : json(nullptr);
  out["minimal_time"] = v.exists && v.minimal ? time_json(v.time) : json(nullptr);
  out["time"] = v.exists ? time_json(v.time) : json(nullptr);
  out["period"] = v.period ? time_json(*v.period) : json(nullptr);
  if (v.witness) {
    const Witness& w = *v.witness;
    json wj = {{"kind", to_string(w.kind)}};
    if (w.kind != WitnessKind::NoCandidates) {
      wj["target"] = R.format(w.target);
      wj["r1"] = R.format(w.r1);
      wj["r2"] = R.format(w.r2);
      wj["lambda_r1"] = w.lambda1;
      wj["lambda_r2"] = w.lambda2;
    }
    out["witness"] = wj;
  } else {
    out["witness"] = nullptr;
  }
  out["candidates_checked"] = v.candidates_checked;
  return out;
}

nlohmann::json to_json(const Ring& R, const ScanRow& row) {
  using nlohmann::json;
  json gens = json::array();
  for (Element g : row.generators) gens.push_back(R.is_unit(g) ? std::string("R") : R.format(g));
  json out = {{"divisors", gens},
              {"isoc2_count", row.parity_count},
              {"parity", row.parity_count % 2 ? "odd" : "even"},
              {"verdict", row.verdict.exists ? "pst" : "no_pst"},
              {"time", row.verdict.exists ? time_json(row.verdict.time) : json(nullptr)},
              {"fast_path_agrees", row.fast_path_agrees},
              {"counterexample", row.counterexample}};
  out["lambda1_in_m"] = row.lambda1_in_m ? json(*row.lambda1_in_m) : json(nullptr);
  return out;
}

nlohmann::json to_json(const UnitaryClassification& c, const Ring& R) {
  return {{"pst", c.pst},
          {"explanation", c.explanation},
          {"target", c.target ? nlohmann::json(R.format(*c.target)) : nlohmann::json(nullptr)}};
}

}  // namespace gcdpst
