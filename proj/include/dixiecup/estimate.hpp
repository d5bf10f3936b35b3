#pragma once

#include <string>

namespace dixiecup {

enum class Method { kQuadrature, kAsymptotic, kMonteCarlo, kOracle };

const char* method_name(Method m);

// A numeric result together with the error bound that comes with it.
// Quadrature estimates carry integration tolerance plus explicit tail and
// truncation bounds; asymptotic estimates may carry a heuristic bound.
struct MomentEstimate {
  double value = 0.0;
  double abs_error = 0.0;
  Method method = Method::kQuadrature;
  std::string detail;
};

}  // namespace dixiecup
