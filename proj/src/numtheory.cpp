#include "numtheory.hpp"

#include <limits>
#include <numeric>

#include "error.hpp"

namespace gcdpst {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return std::make_pair(q, 1u);
  unsigned k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(p, k);
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint32_t>::max() / base) {
      throw ResourceCapError("ring order overflow");
    }
    r *= base;
  }
  return r;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

namespace polymod {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly reduce(Poly f, std::int64_t m) {
  for (auto& c : f) c = floor_mod(c, m);
  trim(f);
  return f;
}

int degree(const Poly& f) {
  Poly g = f;
  trim(g);
  return static_cast<int>(g.size()) - 1;
}

Poly add(const Poly& f, const Poly& g, std::int64_t m) {
  Poly r(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < f.size(); ++i) r[i] += f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] += g[i];
  return reduce(std::move(r), m);
}

Poly sub(const Poly& f, const Poly& g, std::int64_t m) {
  Poly r(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < f.size(); ++i) r[i] += f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] -= g[i];
  return reduce(std::move(r), m);
}

Poly mul(const Poly& f, const Poly& g, std::int64_t m) {
  if (f.empty() || g.empty()) return {};
  Poly r(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      r[i + j] = floor_mod(r[i + j] + floor_mod(f[i] * g[j], m), m);
    }
  }
  trim(r);
  return r;
}

Poly rem_monic(Poly f, const Poly& g, std::int64_t m) {
  f = reduce(std::move(f), m);
  const int dg = degree(g);
  while (degree(f) >= dg) {
    const int df = degree(f);
    const std::int64_t c = f[df];
    for (int i = 0; i <= dg; ++i) {
      f[df - dg + i] = floor_mod(f[df - dg + i] - c * g[i], m);
    }
    trim(f);
  }
  return f;
}

namespace {

std::int64_t inverse_mod_prime(std::int64_t a, std::int64_t p) {
  // Fermat; p is prime and small.
  std::int64_t result = 1, base = floor_mod(a, p), e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

Poly make_monic(Poly f, std::int64_t p) {
  trim(f);
  if (f.empty()) return f;
  const std::int64_t inv = inverse_mod_prime(f.back(), p);
  for (auto& c : f) c = c * inv % p;
  return f;
}

}  // namespace

std::pair<Poly, Poly> divmod_field(Poly f, const Poly& g_in, std::int64_t p) {
  Poly g = reduce(g_in, p);
  if (g.empty()) throw InvalidArgument("polynomial division by zero");
  f = reduce(std::move(f), p);
  const int dg = degree(g);
  const std::int64_t lead_inv = inverse_mod_prime(g.back(), p);
  Poly q(std::max(0, degree(f) - dg + 1), 0);
  while (degree(f) >= dg) {
    const int df = degree(f);
    const std::int64_t c = f[df] * lead_inv % p;
    q[df - dg] = c;
    for (int i = 0; i <= dg; ++i) {
      f[df - dg + i] = floor_mod(f[df - dg + i] - c * g[i], p);
    }
    trim(f);
  }
  trim(q);
  return {q, f};
}

Poly gcd_field(Poly f, Poly g, std::int64_t p) {
  f = reduce(std::move(f), p);
  g = reduce(std::move(g), p);
  while (!g.empty()) {
    Poly r = divmod_field(f, g, p).second;
    f = std::move(g);
    g = std::move(r);
  }
  return make_monic(std::move(f), p);
}

Poly derivative(const Poly& f, std::int64_t m) {
  if (f.size() <= 1) return {};
  Poly r(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = floor_mod(f[i] * static_cast<std::int64_t>(i), m);
  trim(r);
  return r;
}

bool is_irreducible(const Poly& f_in, std::int64_t p) {
  Poly f = reduce(f_in, p);
  const int d = degree(f);
  if (d < 1) return false;
  // Trial division by every monic polynomial of degree 1..d/2.
  for (int k = 1; 2 * k <= d; ++k) {
    const std::uint64_t count = checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(k));
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(k + 1, 0);
      g[k] = 1;
      std::uint64_t c = code;
      for (int i = 0; i < k; ++i) {
        g[i] = static_cast<std::int64_t>(c % p);
        c /= p;
      }
      if (divmod_field(f, g, p).second.empty()) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(std::int64_t p, unsigned k) {
  const std::uint64_t count = checked_pow(static_cast<std::uint64_t>(p), k);
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly g(k + 1, 0);
    g[k] = 1;
    std::uint64_t c = code;
    for (unsigned i = 0; i < k; ++i) {
      g[i] = static_cast<std::int64_t>(c % p);
      c /= p;
    }
    if (is_irreducible(g, p)) return g;
  }
  throw InternalError("no irreducible polynomial found");
}

}  // namespace polymod
}  // namespace gcdpst
