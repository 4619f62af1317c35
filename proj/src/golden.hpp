#pragma once

// Built-in reference values for the two F2[x,y]/(x^2,y^2) graphs, the chain
// ring classification and a few unitary graphs, checked end to end.

#include <string>
#include <vector>

#include "json.hpp"
#include "spectra.hpp"

namespace gcdpst {

struct GoldenCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct GoldenReport {
  std::vector<GoldenCheck> checks;
  bool all_passed() const;
};

GoldenReport run_golden_suite(const ArithmeticConventions& conventions = {});
nlohmann::json to_json(const GoldenReport& report);
std::string to_text(const GoldenReport& report);

}  // namespace gcdpst
