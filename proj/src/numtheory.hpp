#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace gcdpst {

bool is_prime(std::uint64_t n);

/// Returns (p, k) with q = p^k, or nullopt if q is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q);

std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

std::uint64_t checked_pow(std::uint64_t base, unsigned exp);  // throws on overflow

std::int64_t floor_mod(std::int64_t a, std::int64_t m);

/// Univariate polynomials over Z/m, coefficients low to high, trailing zeros trimmed.
namespace polymod {

using Poly = std::vector<std::int64_t>;

void trim(Poly& f);
Poly reduce(Poly f, std::int64_t m);
int degree(const Poly& f);  // -1 for the zero polynomial
Poly add(const Poly& f, const Poly& g, std::int64_t m);
Poly sub(const Poly& f, const Poly& g, std::int64_t m);
Poly mul(const Poly& f, const Poly& g, std::int64_t m);
/// Remainder of f modulo a monic g over Z/m.
Poly rem_monic(Poly f, const Poly& g, std::int64_t m);
/// Division with remainder over the field F_p (p prime), g nonzero.
std::pair<Poly, Poly> divmod_field(Poly f, const Poly& g, std::int64_t p);
Poly gcd_field(Poly f, Poly g, std::int64_t p);  // monic result
Poly derivative(const Poly& f, std::int64_t m);
bool is_irreducible(const Poly& f, std::int64_t p);
/// Canonical irreducible monic polynomial of degree k over F_p: the first one
/// found when enumerating lower coefficients as a base-p counter.
Poly smallest_irreducible(std::int64_t p, unsigned k);

}  // namespace polymod
}  // namespace gcdpst
