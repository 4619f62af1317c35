#pragma once

// Brute-force checks that share no code path with the spectral closed form or
// the congruence solver.

#include <complex>
#include <string>
#include <vector>

#include "duality.hpp"
#include "gcd_graph.hpp"
#include "pst_engine.hpp"
#include "spectra.hpp"

namespace gcdpst {

/// F(t)_{0,s} = (1/|R|) sum_r exp(i lambda_r t) zeta_n^{psi(-s r)}.
std::complex<double> walk_amplitude(const Ring& R, const Spectrum& spec, const Functional& psi, Element s,
                                    double t);

struct AmplitudeSample {
  double t;
  std::complex<double> value;
};

/// t = k * step for k = 0..steps.
std::vector<AmplitudeSample> amplitude_sweep(const Ring& R, const Spectrum& spec, const Functional& psi,
                                             Element s, double step, std::size_t steps);
double max_modulus(const std::vector<AmplitudeSample>& samples);
std::string sweep_csv(const std::vector<AmplitudeSample>& samples);

/// Characteristic polynomial of the 0/1 adjacency matrix: Hessenberg reduction
/// modulo several word-size primes, combined by CRT.
CharPoly char_poly_exact(const GcdGraph& G, std::size_t cap = 64);

/// Subgroup generated by r1 - r2 over pairs with lambda_{r1} = lambda_{r2}.
Subset delta_full(const Spectrum& spec, const Ring& R);

struct VerdictCheck {
  bool ok = false;
  double modulus_at_time = 0;
  double modulus_at_next = 0;
  double next_time = 0;  // radians
};

/// |F(t)_{0,s}| >= 1 - 1e-9 at the reported time and at the next time in its class.
VerdictCheck verify_verdict(const GcdGraph& G, const Spectrum& spec, const Functional& psi, const PstVerdict& v);

}  // namespace gcdpst
