#include "oracle.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "error.hpp"
#include "numtheory.hpp"

namespace gcdpst {

std::complex<double> walk_amplitude(const Ring& R, const Spectrum& spec, const Functional& psi, Element s,
                                    double t) {
  const double n = static_cast<double>(psi.modulus());
  const Element minus_s = R.neg(s);
  std::complex<double> sum = 0;
  for (Element r = 0; r < R.order(); ++r) {
    double angle = static_cast<double>(spec[r]) * t +
                   2.0 * std::numbers::pi * static_cast<double>(psi(R.mul(minus_s, r))) / n;
    sum += std::polar(1.0, angle);
  }
  return sum / static_cast<double>(R.order());
}

std::vector<AmplitudeSample> amplitude_sweep(const Ring& R, const Spectrum& spec, const Functional& psi,
                                             Element s, double step, std::size_t steps) {
  std::vector<AmplitudeSample> out;
  out.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    double t = step * static_cast<double>(k);
    out.push_back({t, walk_amplitude(R, spec, psi, s, t)});
  }
  return out;
}

double max_modulus(const std::vector<AmplitudeSample>& samples) {
  double best = 0;
  for (const auto& x : samples) best = std::max(best, std::abs(x.value));
  return best;
}

std::string sweep_csv(const std::vector<AmplitudeSample>& samples) {
  std::ostringstream os;
  os.precision(17);
  os << "t,re,im,modulus\n";
  for (const auto& x : samples)
    os << x.t << ',' << x.value.real() << ',' << x.value.imag() << ',' << std::abs(x.value) << '\n';
  return os.str();
}

namespace {

using u64 = std::uint64_t;

u64 pow_mod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

// Characteristic polynomial of H mod p (p < 2^31), coefficients lowest first.
std::vector<u64> char_poly_mod(std::vector<std::vector<u64>> H, u64 p) {
  const std::size_t n = H.size();
  for (std::size_t c = 0; c + 2 < n; ++c) {
    std::size_t piv = c + 1;
    while (piv < n && H[piv][c] == 0) ++piv;
    if (piv == n) continue;
    if (piv != c + 1) {
      std::swap(H[piv], H[c + 1]);
      for (auto& row : H) std::swap(row[piv], row[c + 1]);
    }
    u64 inv = pow_mod(H[c + 1][c], p - 2, p);
    for (std::size_t k = c + 2; k < n; ++k) {
      u64 f = H[k][c] * inv % p;
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) H[k][j] = (H[k][j] + (p - f) * H[c + 1][j]) % p;
      for (std::size_t i = 0; i < n; ++i) H[i][c + 1] = (H[i][c + 1] + f * H[i][k]) % p;
    }
  }
  // polys[m] = char poly of the leading m x m block
  std::vector<std::vector<u64>> polys{{1}};
  for (std::size_t m = 1; m <= n; ++m) {
    const auto& prev = polys[m - 1];
    std::vector<u64> cur(m + 1, 0);
    for (std::size_t k = 0; k < prev.size(); ++k) {
      cur[k + 1] = (cur[k + 1] + prev[k]) % p;
      cur[k] = (cur[k] + (p - H[m - 1][m - 1]) * prev[k]) % p;
    }
    u64 prod = 1;
    for (std::size_t i = m - 1; i-- > 0;) {
      prod = prod * H[i + 1][i] % p;
      if (prod == 0) break;
      u64 f = H[i][m - 1] * prod % p;
      for (std::size_t k = 0; k < polys[i].size(); ++k) cur[k] = (cur[k] + (p - f) * polys[i][k]) % p;
    }
    polys.push_back(std::move(cur));
  }
  return polys[n];
}

}  // namespace

CharPoly char_poly_exact(const GcdGraph& G, std::size_t cap) {
  const Ring& R = G.ring();
  const std::size_t n = R.order();
  if (n > cap) throw ResourceCapError("adjacency matrix larger than " + std::to_string(cap));
  std::vector<std::vector<u64>> A(n, std::vector<u64>(n, 0));
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) A[a][b] = G.adjacent(a, b) ? 1 : 0;

  // |c_k| <= C(n, k) * deg^k <= (deg + 1)^n
  BigInt bound = 1;
  for (std::size_t i = 0; i < n; ++i) bound *= G.degree() + 1;
  bound *= 2;

  std::vector<BigInt> coeffs(n + 1, 0);
  BigInt modulus = 1;
  u64 p = (u64{1} << 31) - 1;
  while (modulus <= bound) {
    while (!is_prime(p)) --p;
    std::vector<std::vector<u64>> Ap = A;
    std::vector<u64> c = char_poly_mod(std::move(Ap), p);
    for (std::size_t k = 0; k <= n; ++k) {
      // x = coeffs[k] (mod modulus), x = c[k] (mod p)
      BigInt diff = (BigInt(c[k]) - coeffs[k] % p) % p;
      if (diff < 0) diff += p;
      u64 inv = pow_mod(static_cast<u64>(modulus % p), p - 2, p);
      BigInt t = diff * inv % p;
      coeffs[k] += modulus * t;
    }
    modulus *= p;
    --p;
  }
  for (auto& c : coeffs)
    if (c > modulus / 2) c -= modulus;
  return CharPoly{std::move(coeffs)};
}

Subset delta_full(const Spectrum& spec, const Ring& R) {
  std::map<std::int64_t, Element> first;
  std::vector<Element> gens;
  for (Element r = 0; r < R.order(); ++r) {
    auto [it, fresh] = first.emplace(spec[r], r);
    if (!fresh) gens.push_back(R.sub(r, it->second));
  }
  return additive_closure(R, gens);
}

VerdictCheck verify_verdict(const GcdGraph& G, const Spectrum& spec, const Functional& psi, const PstVerdict& v) {
  if (!v.exists) throw InvalidArgument("verdict reports no transfer");
  const Ring& R = G.ring();
  // Eigenvalues are integers, so shifting tau by 1 always stays in the class.
  Rational next = v.time + (v.period ? *v.period : Rational(1));
  double t0 = static_cast<double>(v.time) * 2.0 * std::numbers::pi;
  double t1 = static_cast<double>(next) * 2.0 * std::numbers::pi;
  VerdictCheck out;
  out.modulus_at_time = std::abs(walk_amplitude(R, spec, psi, v.target, t0));
  out.modulus_at_next = std::abs(walk_amplitude(R, spec, psi, v.target, t1));
  out.next_time = t1;
  out.ok = out.modulus_at_time >= 1 - 1e-9 && out.modulus_at_next >= 1 - 1e-9;
  return out;
}

}  // namespace gcdpst
