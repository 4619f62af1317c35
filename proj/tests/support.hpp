#pragma once

// Shared catalog and brute-force oracles for the test binaries. Nothing here
// calls the closed-form spectrum or the congruence solver.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "duality.hpp"
#include "gcd_graph.hpp"
#include "ideal.hpp"
#include "ring.hpp"

namespace testing_support {

using namespace gcdpst;

/// Local rings with residue field F_2.
inline const std::vector<std::string>& local_f2_catalog() {
  static const std::vector<std::string> rings = {
      "F2",          "Z4",          "Z8",          "Z16",         "Z32",
      "Z64",         "F2[x]/(x^2)", "F2[x]/(x^3)", "F2[x]/(x^4)", "F2[x]/(x^5)",
      "F2[x]/(x^6)", "F2[x,y]/(x^2,y^2)", "Z4[x]/(x^2)", "Z4[x]/(x^2-2)", "F2[x,y]/(x^2,y^3)",
      "Z8[x]/(x^2)", "Z4[x]/(x^2+2*x+2)", "F2[x,y,z]/(x^2,y^2,z^2)"};
  return rings;
}

/// Local rings whose residue field is not F_2.
inline const std::vector<std::string>& local_other_catalog() {
  static const std::vector<std::string> rings = {"F3", "F5", "GF(4)", "GF(8)", "GF(9)", "Z9", "Z25",
                                                 "F3[x]/(x^2)", "GF(4)[u]/(u^2)", "Z4[x]/(x^2+x+1)"};
  return rings;
}

/// Non-local rings.
inline const std::vector<std::string>& product_catalog() {
  static const std::vector<std::string> rings = {
      "Z6",          "Z12",          "F2 x F2",         "Z4 x F2",        "Z4 x GF(4)",
      "F2 x F3",     "F2 x F2 x F3", "GF(4) x GF(4)",   "F2[x]/(x^2+x)",  "F2[x]/(x^3+x)",
      "Z4 x F3",     "Z8 x F5",      "F2[x]/(x^2) x GF(8)", "F2 x GF(9)", "Z10",
      "F2[x,y]/(x^2,y^2) x F2"};
  return rings;
}

inline std::vector<std::string> full_catalog() {
  std::vector<std::string> out = local_f2_catalog();
  for (const auto& r : local_other_catalog()) out.push_back(r);
  for (const auto& r : product_catalog()) out.push_back(r);
  return out;
}

/// Every nonempty set of at most `max_size` nonzero principal ideals.
inline std::vector<DivisorSet> all_divisor_sets(const Ring& R, std::size_t max_size) {
  std::vector<Ideal> ideals = nonzero_principal_ideals(R);
  std::vector<DivisorSet> out;
  const std::size_t p = ideals.size();
  std::vector<std::size_t> idx;
  // depth-first over increasing index lists
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (!idx.empty()) {
      std::vector<Ideal> chosen;
      for (std::size_t i : idx) chosen.push_back(ideals[i]);
      out.push_back(make_divisor_set(R, chosen));
    }
    if (idx.size() == max_size) return;
    for (std::size_t i = start; i < p; ++i) {
      idx.push_back(i);
      self(self, i + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Dense adjacency matrix.
inline Eigen::MatrixXd adjacency(const GcdGraph& G) {
  const auto n = static_cast<Eigen::Index>(G.ring().order());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      if (G.adjacent(static_cast<Element>(a), static_cast<Element>(b))) A(a, b) = 1;
  return A;
}

/// exp(i A t)_{0,s} from a symmetric eigendecomposition of the adjacency matrix.
class MatrixWalk {
 public:
  explicit MatrixWalk(const GcdGraph& G) : solver_(adjacency(G)) {}

  std::complex<double> amplitude(Element s, double t) const {
    const auto& V = solver_.eigenvectors();
    const auto& w = solver_.eigenvalues();
    std::complex<double> sum = 0;
    for (Eigen::Index k = 0; k < w.size(); ++k) sum += std::polar(1.0, w(k) * t) * V(0, k) * V(s, k);
    return sum;
  }

  std::vector<double> eigenvalues() const {
    std::vector<double> out(solver_.eigenvalues().data(),
                            solver_.eigenvalues().data() + solver_.eigenvalues().size());
    return out;
  }

 private:
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver_;
};

/// sum over s with Rs = Rx of zeta_n^{psi(r s)}, straight from the definition.
inline double ramanujan_by_definition(const Ring& R, const Functional& psi, Element r, Element x) {
  Subset target = principal_ideal_set(R, x);
  std::complex<double> sum = 0;
  for (Element s = 0; s < R.order(); ++s) {
    if (!(principal_ideal_set(R, s) == target)) continue;
    double angle = 2 * std::numbers::pi * static_cast<double>(psi(R.mul(r, s))) / static_cast<double>(psi.modulus());
    sum += std::polar(1.0, angle);
  }
  return sum.real();
}

/// Number of units of R/I by counting cosets a + I with some b, ab - 1 in I.
inline std::uint64_t units_of_quotient(const Ring& R, const Subset& I) {
  std::uint64_t count = 0;
  for (Element a = 0; a < R.order(); ++a) {
    // visit each coset once via its least member
    bool least = true;
    for (Element i : I.elements()) {
      if (R.add(a, i) < a) {
        least = false;
        break;
      }
    }
    if (!least) continue;
    for (Element b = 0; b < R.order(); ++b) {
      if (I.contains(R.sub(R.mul(a, b), R.one()))) {
        ++count;
        break;
      }
    }
  }
  return count;
}

}  // namespace testing_support
